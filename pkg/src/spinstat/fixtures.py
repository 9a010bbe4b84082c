"""JSON fixture format for product states and superpositions.

Product state::

    {"coeff": [re, im],
     "slots": [{"orbital": [[re, im], ...], "two_s": 1, "two_m": 1, "chi": 0.5}, ...]}

Superposition::

    {"terms": [<product state>, ...]}

An empty ``terms`` list additionally needs ``"n"``, ``"dim"`` and ``"two_s"``.
Angles are radians and are canonicalised to ``[0, 2*pi)`` on load.
"""

from __future__ import annotations

import json
from pathlib import Path

from .states import IncompatibleStates, ProductState, SingleParticleState, Superposition


class FixtureError(ValueError):
    """Malformed fixture content."""


def _complex(value, where: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(isinstance(v, (int, float)) for v in value):
        return complex(value[0], value[1])
    raise FixtureError(f"{where}: expected a number or [re, im], got {value!r}")


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def slot_from_dict(data: dict, where: str = "slot") -> SingleParticleState:
    try:
        orbital = [_complex(v, f"{where}.orbital[{k}]") for k, v in enumerate(data["orbital"])]
        return SingleParticleState(orbital, int(data["two_s"]), int(data["two_m"]), float(data.get("chi", 0.0)))
    except KeyError as exc:
        raise FixtureError(f"{where}: missing field {exc.args[0]!r}") from None
    except (TypeError, IncompatibleStates) as exc:
        raise FixtureError(f"{where}: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, FixtureError):
            raise
        raise FixtureError(f"{where}: {exc}") from None


def product_from_dict(data: dict, where: str = "state") -> ProductState:
    if not isinstance(data, dict) or "slots" not in data:
        raise FixtureError(f"{where}: expected an object with 'slots'")
    slots = [slot_from_dict(s, f"{where}.slots[{k}]") for k, s in enumerate(data["slots"])]
    try:
        return ProductState(tuple(slots), _complex(data.get("coeff", [1.0, 0.0]), f"{where}.coeff"))
    except ValueError as exc:
        if isinstance(exc, FixtureError):
            raise
        raise FixtureError(f"{where}: {exc}") from None


def superposition_from_dict(data: dict) -> Superposition:
    if not isinstance(data, dict):
        raise FixtureError("fixture must be a JSON object")
    if "slots" in data:
        term = product_from_dict(data)
        return Superposition((term,), *term.shape())
    if "terms" not in data:
        raise FixtureError("fixture needs either 'slots' (product state) or 'terms' (superposition)")
    terms = [product_from_dict(t, f"terms[{k}]") for k, t in enumerate(data["terms"])]
    if not terms:
        try:
            return Superposition.zero(int(data["n"]), int(data["dim"]), int(data["two_s"]))
        except KeyError:
            raise FixtureError("an empty superposition needs 'n', 'dim' and 'two_s'") from None
    try:
        return Superposition.of(terms)
    except IncompatibleStates as exc:
        raise FixtureError(str(exc)) from None


def slot_to_dict(s: SingleParticleState) -> dict:
    return {
        "orbital": [complex_pair(z) for z in s.orbital],
        "two_s": s.two_s,
        "two_m": s.two_m,
        "chi": s.chi,
    }


def product_to_dict(t: ProductState) -> dict:
    return {"coeff": complex_pair(t.coeff), "slots": [slot_to_dict(s) for s in t.slots]}


def superposition_to_dict(sup: Superposition) -> dict:
    out: dict = {"terms": [product_to_dict(t) for t in sup.terms]}
    if not sup.terms:
        out.update(n=sup.n, dim=sup.dim, two_s=sup.two_s)
    return out


def load(path: str | Path) -> Superposition:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FixtureError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return superposition_from_dict(data)


def dump(sup: Superposition, path: str | Path) -> None:
    Path(path).write_text(json.dumps(superposition_to_dict(sup), indent=2) + "\n")
