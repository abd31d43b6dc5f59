"""JSON file formats.

Tensors use one layout everywhere: ``{shape: nested lists}`` where the
nesting follows the inputs and the innermost list holds the output
coordinates as rational strings ("p" or "p/q").  Matrices are row-major,
``matrix[out][in]``.  String values in place of an algebra object are paths,
resolved relative to the referring file.  Unknown keys are rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .algebra import AlgebraSpec, MorphismSpec, RepresentationSpec, as_matrix
from .deformation import FormalAutomorphism, TruncatedDeformation
from .linalg import exact, parse_rational
from .morphisms import MorphismDeformation
from .operad import Element, Operad, zeros_array
from .shapes import ShapeSyntaxError, get_family, _enumerate


class SpecError(ValueError):
    """Malformed input; ``location`` is a path such as ``file.json:products.1[0]``."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


# ---------------------------------------------------------------------------
# primitives


def _rat(value, loc: str):
    try:
        return exact(parse_rational(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecError(loc, str(exc)) from None


def _fmt(x) -> str:
    return str(Fraction(x))


def _keys(obj, allowed: set, required: set, loc: str):
    if not isinstance(obj, dict):
        raise SpecError(loc, "expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise SpecError(loc, f"unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise SpecError(loc, f"missing field(s) {sorted(missing)}")


def _int(value, loc: str, low: int = 0) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < low:
        raise SpecError(loc, f"expected an integer >= {low}")
    return value


def matrix_from_json(obj, rows: int, cols: int, loc: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != rows:
        raise SpecError(loc, f"expected {rows} rows")
    out = np.zeros((rows, cols), dtype=object)
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise SpecError(f"{loc}[{r}]", f"expected {cols} entries")
        for c, v in enumerate(row):
            out[r, c] = _rat(v, f"{loc}[{r}][{c}]")
    return out


def matrix_to_json(m) -> list:
    return [[_fmt(x) for x in row] for row in np.asarray(m, dtype=object)]


def tensor_from_json(obj, family: str, arity: int, in_dims, out_dim: int, loc: str) -> np.ndarray:
    fam = get_family(family)
    if not isinstance(obj, dict):
        raise SpecError(loc, "expected an object keyed by shape")
    arr = zeros_array(fam.name, arity, in_dims, out_dim)
    shapes = _enumerate(fam.name, arity)
    seen = set()
    for key, nested in obj.items():
        kloc = f"{loc}.{key}"
        try:
            shape = fam.parse(key, arity)
        except ShapeSyntaxError as exc:
            raise SpecError(kloc, f"bad shape at position {exc.position}: {exc}") from None
        except ValueError as exc:
            raise SpecError(kloc, str(exc)) from None
        s = shapes.index(shape)
        if s in seen:
            raise SpecError(kloc, "duplicate shape")
        seen.add(s)
        _fill(arr[s], nested, list(in_dims) + [out_dim], kloc)
    if len(seen) != len(shapes):
        missing = [fam.format(sh) for k, sh in enumerate(shapes) if k not in seen]
        raise SpecError(loc, f"missing product for shape(s) {missing}")
    return arr


def _fill(target: np.ndarray, nested, dims: list[int], loc: str):
    if not isinstance(nested, list) or len(nested) != dims[0]:
        raise SpecError(loc, f"expected a list of length {dims[0]}")
    for k, item in enumerate(nested):
        if len(dims) == 1:
            target[k] = _rat(item, f"{loc}[{k}]")
        else:
            _fill(target[k], item, dims[1:], f"{loc}[{k}]")


def tensor_to_json(data: np.ndarray, family: str, arity: int) -> dict:
    fam = get_family(family)

    def nest(a):
        if a.ndim == 1:
            return [_fmt(x) for x in a]
        return [nest(a[k]) for k in range(a.shape[0])]

    return {fam.format(sh): nest(data[s]) for s, sh in enumerate(_enumerate(fam.name, arity))}


def element_to_json(e: Element) -> dict:
    return tensor_to_json(e.data, e.family, e.arity)


# ---------------------------------------------------------------------------
# algebras and representations


_ALGEBRA_KEYS = {"family", "dim", "products", "alpha", "beta", "mdim", "theta1", "theta2"}


def algebra_from_json(obj, loc: str = "algebra") -> tuple[AlgebraSpec, RepresentationSpec | None]:
    _keys(obj, _ALGEBRA_KEYS, {"family", "dim", "products"}, loc)
    try:
        fam = get_family(obj["family"]).name
    except (KeyError, ValueError, TypeError):
        raise SpecError(f"{loc}.family", f"unknown family {obj['family']!r}") from None
    d = _int(obj["dim"], f"{loc}.dim", 1)
    pi = tensor_from_json(obj["products"], fam, 2, (d, d), d, f"{loc}.products")
    if ("alpha" in obj) != ("beta" in obj):
        raise SpecError(loc, "alpha and beta must be given together")
    alpha = beta = None
    if "alpha" in obj:
        op = Operad(fam, d)
        alpha = op.from_matrix(matrix_from_json(obj["alpha"], d, d, f"{loc}.alpha").tolist())
        beta = op.from_matrix(matrix_from_json(obj["beta"], d, d, f"{loc}.beta").tolist())
    spec = AlgebraSpec(fam, d, Element(fam, 2, pi), alpha, beta)
    rep = None
    rep_keys = {"mdim", "theta1", "theta2"} & set(obj)
    if rep_keys:
        if rep_keys != {"mdim", "theta1", "theta2"}:
            raise SpecError(loc, "a representation needs mdim, theta1 and theta2")
        m = _int(obj["mdim"], f"{loc}.mdim", 0)
        t1 = tensor_from_json(obj["theta1"], fam, 2, (d, m), m, f"{loc}.theta1")
        t2 = tensor_from_json(obj["theta2"], fam, 2, (m, d), m, f"{loc}.theta2")
        rep = RepresentationSpec(spec, m, t1, t2)
    return spec, rep


def algebra_to_json(spec: AlgebraSpec, rep: RepresentationSpec | None = None) -> dict:
    out: dict[str, Any] = {"family": spec.family, "dim": spec.dim, "products": element_to_json(spec.pi)}
    if spec.alpha is not None:
        out["alpha"] = matrix_to_json(spec.alpha.data[0].T)
        out["beta"] = matrix_to_json(spec.beta.data[0].T)
    if rep is not None:
        out["mdim"] = rep.mdim
        out["theta1"] = tensor_to_json(rep.theta1, spec.family, 2)
        out["theta2"] = tensor_to_json(rep.theta2, spec.family, 2)
    return out


# ---------------------------------------------------------------------------
# files


def read_json(path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(str(path), f"cannot read file ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None


def _algebra_ref(obj, base_dir: Path, loc: str) -> AlgebraSpec:
    if isinstance(obj, str):
        path = base_dir / obj
        return algebra_from_json(read_json(path), str(path))[0]
    return algebra_from_json(obj, loc)[0]


def load_algebra(path) -> tuple[AlgebraSpec, RepresentationSpec | None]:
    return algebra_from_json(read_json(path), str(path))


def load_cochain(path, spec: AlgebraSpec, mdim: int | None = None) -> Element:
    obj = read_json(path)
    loc = str(path)
    _keys(obj, {"cochain", "arity", "mdim"}, {"cochain", "arity"}, loc)
    n = _int(obj["arity"], f"{loc}.arity", 1)
    m = obj.get("mdim", mdim if mdim is not None else spec.dim)
    m = _int(m, f"{loc}.mdim", 0)
    data = tensor_from_json(obj["cochain"], spec.family, n, (spec.dim,) * n, m, f"{loc}.cochain")
    return Element(spec.family, n, data)


def cochain_to_json(e: Element) -> dict:
    return {"cochain": element_to_json(e), "arity": e.arity, "mdim": e.out_dim}


def morphism_from_json(obj, base_dir: Path, loc: str) -> MorphismSpec:
    _keys(obj, {"source", "target", "matrix"}, {"source", "target", "matrix"}, loc)
    A = _algebra_ref(obj["source"], base_dir, f"{loc}.source")
    B = _algebra_ref(obj["target"], base_dir, f"{loc}.target")
    if A.family != B.family:
        raise SpecError(loc, "source and target have different families")
    return MorphismSpec(A, B, matrix_from_json(obj["matrix"], B.dim, A.dim, f"{loc}.matrix"))


def load_morphism(path) -> MorphismSpec:
    path = Path(path)
    return morphism_from_json(read_json(path), path.parent, str(path))


def morphism_to_json(f: MorphismSpec) -> dict:
    return {"source": algebra_to_json(f.source), "target": algebra_to_json(f.target),
            "matrix": matrix_to_json(f.matrix)}


def _terms(obj, spec: AlgebraSpec, arity: int, order: int, first: Element, loc: str) -> list[Element]:
    if not isinstance(obj, list) or len(obj) not in (order, order + 1):
        raise SpecError(loc, f"expected {order} or {order + 1} terms for order {order}")
    out = [Element(spec.family, arity, tensor_from_json(t, spec.family, arity, (spec.dim,) * arity, spec.dim,
                                                        f"{loc}[{k}]")) for k, t in enumerate(obj)]
    if len(out) == order + 1:
        if out[0] != first:
            raise SpecError(f"{loc}[0]", "the constant term does not match")
        return out
    return [first] + out


def deformation_from_json(obj, base_dir: Path, loc: str) -> TruncatedDeformation:
    """Terms list either [pi_0, .., pi_N] or [pi_1, .., pi_N]."""
    _keys(obj, {"base", "order", "terms"}, {"base", "order", "terms"}, loc)
    spec = _algebra_ref(obj["base"], base_dir, f"{loc}.base")
    N = _int(obj["order"], f"{loc}.order", 0)
    return TruncatedDeformation(spec, _terms(obj["terms"], spec, 2, N, spec.pi, f"{loc}.terms"))


def load_deformation(path) -> TruncatedDeformation:
    path = Path(path)
    return deformation_from_json(read_json(path), path.parent, str(path))


def deformation_to_json(defo: TruncatedDeformation) -> dict:
    return {"base": algebra_to_json(defo.base), "order": defo.order,
            "terms": [element_to_json(t) for t in defo.terms]}


def load_automorphism(path) -> tuple[AlgebraSpec, FormalAutomorphism]:
    path = Path(path)
    obj = read_json(path)
    loc = str(path)
    _keys(obj, {"base", "order", "terms"}, {"base", "order", "terms"}, loc)
    spec = _algebra_ref(obj["base"], path.parent, f"{loc}.base")
    N = _int(obj["order"], f"{loc}.order", 0)
    ident = Operad(spec.family, spec.dim).identity()
    return spec, FormalAutomorphism(_terms(obj["terms"], spec, 1, N, ident, f"{loc}.terms"))


def automorphism_to_json(spec: AlgebraSpec, phi: FormalAutomorphism) -> dict:
    return {"base": algebra_to_json(spec), "order": phi.order, "terms": [element_to_json(t) for t in phi.terms]}


def morphism_deformation_from_json(obj, base_dir: Path, loc: str) -> MorphismDeformation:
    """{"source", "target", "fterms": [f_0, .., f_N], optional "source_terms",
    "target_terms"}; missing term lists mean constant deformations."""
    _keys(obj, {"source", "target", "fterms", "source_terms", "target_terms"}, {"source", "target", "fterms"}, loc)
    A = _algebra_ref(obj["source"], base_dir, f"{loc}.source")
    B = _algebra_ref(obj["target"], base_dir, f"{loc}.target")
    if A.family != B.family:
        raise SpecError(loc, "source and target have different families")
    fl = obj["fterms"]
    if not isinstance(fl, list) or not fl:
        raise SpecError(f"{loc}.fterms", "expected a non-empty list of matrices")
    fterms = [matrix_from_json(m, B.dim, A.dim, f"{loc}.fterms[{k}]") for k, m in enumerate(fl)]
    N = len(fterms) - 1
    f = MorphismSpec(A, B, fterms[0])
    if "source_terms" in obj:
        defA = TruncatedDeformation(A, _terms(obj["source_terms"], A, 2, N, A.pi, f"{loc}.source_terms"))
    else:
        defA = TruncatedDeformation.constant(A, N)
    if "target_terms" in obj:
        defB = TruncatedDeformation(B, _terms(obj["target_terms"], B, 2, N, B.pi, f"{loc}.target_terms"))
    else:
        defB = TruncatedDeformation.constant(B, N)
    return MorphismDeformation(f, defA, defB, fterms)


def load_morphism_deformation(path) -> MorphismDeformation:
    path = Path(path)
    return morphism_deformation_from_json(read_json(path), path.parent, str(path))


def morphism_deformation_to_json(md: MorphismDeformation) -> dict:
    return {"source": algebra_to_json(md.f.source), "target": algebra_to_json(md.f.target),
            "fterms": [matrix_to_json(m) for m in md.fterms],
            "source_terms": [element_to_json(t) for t in md.defA.terms],
            "target_terms": [element_to_json(t) for t in md.defB.terms]}


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)
