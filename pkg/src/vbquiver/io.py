"""JSON file formats for biquandles, weights, endomorphism sets, diagrams and data vectors.

A data vector file bundles everything a quiver needs::

    {"biquandle": <biquandle object or path>,
     "weights": [<weight object or path>, ...],
     "endomorphisms": {"maps": [[...], ...]} or a path,
     "mode": "auto"}

Relative paths are resolved against the data vector file. A directory can be
given instead of a file; it must contain ``datavector.json``. Bundled inputs
are addressed by bare name (``dv41``, ``3.1``). A knot table is a JSON list of
diagram objects or ``{"name", "gauss"}`` entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .algebra import AbelianGroup, StructureError, VirtualBiquandle, endomorphism_witness
from .diagram import DiagramError, VirtualDiagram, diagram_from_dict
from .gauss import realize
from .weights import BoltzmannWeight, covector_to_table


class InputError(ValueError):
    """A file that cannot be read or parsed."""


@dataclass(frozen=True)
class DataVector:
    X: VirtualBiquandle
    C: tuple[BoltzmannWeight, ...]
    S: tuple[tuple[int, ...], ...]
    mode: str = "auto"
    name: str = ""

    @property
    def group(self) -> AbelianGroup:
        return self.C[0].group


def read_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def data_dir():
    return resources.files("vbquiver") / "data"


def bundled_json(name: str) -> object:
    return json.loads((data_dir() / name).read_text())


# ---------------------------------------------------------------------------
# objects


def biquandle_from_dict(data: dict, name: str = "") -> VirtualBiquandle:
    try:
        X = VirtualBiquandle.from_tables(data["under"], data["over"], data["v"], name=data.get("name", name))
    except KeyError as exc:
        raise StructureError(f"biquandle is missing field {exc.args[0]!r}") from None
    if "n" in data and data["n"] != X.n:
        raise StructureError(f"biquandle declares n={data['n']} but its tables have {X.n} rows")
    return X


def biquandle_to_dict(X: VirtualBiquandle) -> dict:
    return X.tables()


def _table_or_covector(A: AbelianGroup, n: int, value, form: str | None, label: str):
    flat = not value or not isinstance(value[0], (list, tuple)) or (len(A.moduli) > 1 and _is_element(value[0]))
    if form is None:
        form = "covector" if flat else "table"
    if form == "covector":
        return covector_to_table(A, n, value)
    if form == "table":
        return value
    raise StructureError(f"{label}: unknown form {form!r}")


def _is_element(x) -> bool:
    return isinstance(x, (list, tuple)) and all(isinstance(a, int) for a in x)


def weight_from_dict(data: dict, n: int | None = None, name: str = "") -> BoltzmannWeight:
    try:
        A = AbelianGroup(tuple(data["group"]))
        phi, psi = data["phi"], data["psi"]
    except KeyError as exc:
        raise StructureError(f"weight is missing field {exc.args[0]!r}") from None
    form = data.get("form")
    if n is None:
        n = _infer_size(phi if isinstance(phi[0], list) else psi)
    phi_t = _table_or_covector(A, n, phi, data.get("phi_form", form), "phi")
    psi_t = _table_or_covector(A, n, psi, data.get("psi_form", form), "psi")
    return BoltzmannWeight.from_tables(A, phi_t, psi_t, name=data.get("name", name))


def _infer_size(value) -> int:
    if value and isinstance(value[0], list):
        return len(value)
    m = len(value)
    n = 1
    while n * (n - 1) < m:
        n += 1
    if n * (n - 1) != m:
        raise StructureError(f"covector length {m} is not n(n-1) for any n")
    return n


def weight_to_dict(W: BoltzmannWeight) -> dict:
    A = W.group
    return {
        "group": list(A.moduli),
        "form": "table",
        "phi": [[A.serialize(a) for a in row] for row in W.phi],
        "psi": [[A.serialize(a) for a in row] for row in W.psi],
    }


def endomorphisms_from_dict(data) -> tuple[tuple[int, ...], ...]:
    maps = data["maps"] if isinstance(data, dict) else data
    return tuple(tuple(m) for m in maps)


def _resolve(ref, base: Path | None):
    if isinstance(ref, (dict, list)):
        return ref
    path = Path(ref)
    if not path.is_absolute() and base is not None:
        path = base / path
    return read_json(path)


def data_vector_from_dict(data: dict, base: Path | None = None, name: str = "") -> DataVector:
    try:
        X = biquandle_from_dict(_resolve(data["biquandle"], base))
        C = tuple(weight_from_dict(_resolve(w, base), X.n) for w in data["weights"])
        S = endomorphisms_from_dict(_resolve(data["endomorphisms"], base))
    except KeyError as exc:
        raise StructureError(f"data vector is missing field {exc.args[0]!r}") from None
    if not C:
        raise StructureError("data vector has no weights")
    if not S:
        raise StructureError("data vector has no endomorphisms")
    for k, sigma in enumerate(S):
        bad = endomorphism_witness(X, sigma)
        if bad is not None:
            raise StructureError(f"endomorphism {k} = {list(sigma)} is not a virtual biquandle map: {bad}")
    return DataVector(X, C, S, data.get("mode", "auto"), data.get("name", name))


def load_data_vector(ref: str) -> DataVector:
    """A path to a data vector file or directory, or the name of a bundled one."""
    path = Path(ref)
    if path.is_dir():
        path = path / "datavector.json"
    if path.exists():
        return data_vector_from_dict(read_json(path), path.parent, name=path.stem)
    bundled = bundled_json("datavectors.json")
    if ref in bundled:
        return data_vector_from_dict(bundled[ref], name=ref)
    raise InputError(f"{ref}: no such file and no bundled data vector of that name")


def diagram_entry(item) -> VirtualDiagram:
    """A diagram object, or ``{"name": ..., "gauss": ...}`` which is drawn on the spot."""
    if isinstance(item, dict) and "gauss" in item and "semiarcs" not in item:
        return realize(item["gauss"], name=str(item.get("name", "")), seed=int(item.get("seed", 0)))
    return diagram_from_dict(item)


def bundled_knots() -> list[VirtualDiagram]:
    return [diagram_entry(d) for d in bundled_json("knots.json")]


def bundled_knot(name: str) -> VirtualDiagram:
    for d in bundled_json("knots.json"):
        if d["name"] == name:
            return diagram_entry(d)
    raise InputError(f"no bundled knot named {name!r}")


def load_diagrams(ref: str, name: str | None = None) -> list[VirtualDiagram]:
    """Diagrams from a diagram file, a knot-table file, a bundled knot name or a Gauss code."""
    path = Path(ref)
    if not path.exists():
        if any(d["name"] == ref for d in bundled_json("knots.json")):
            return [bundled_knot(ref)]
        try:
            return [realize(ref, name=ref)]
        except DiagramError as exc:
            raise InputError(f"{ref}: no such file, bundled knot or valid Gauss code ({exc})") from None
    data = read_json(path)
    try:
        if isinstance(data, dict):
            out = [diagram_entry(data)]
        elif isinstance(data, list):
            out = []
            for k, item in enumerate(data):
                try:
                    out.append(diagram_entry(item))
                except DiagramError as exc:
                    raise DiagramError(f"table entry {k}: {exc}") from None
        else:
            raise DiagramError("expected a diagram object or a list of diagrams")
    except DiagramError as exc:
        raise InputError(f"{path}: {exc}") from None
    if name is not None:
        out = [d for d in out if d.name == name]
        if not out:
            raise InputError(f"{path}: no diagram named {name!r}")
    return out
