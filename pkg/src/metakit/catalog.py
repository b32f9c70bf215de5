"""Built-in worked data: (root datum, B, n, q) instances in the JSON input schema."""

from __future__ import annotations

import copy

__all__ = ["CATALOG", "catalog_entry", "catalog_names"]

_SL2 = {"rank": 1, "simple_coroots": [[1]], "simple_roots": [[2]]}
_PGL2 = {"rank": 1, "simple_coroots": [[2]], "simple_roots": [[1]]}
_SL3 = {"rank": 2, "simple_coroots": [[1, 0], [0, 1]], "simple_roots": [[2, -1], [-1, 2]]}
# simply connected type C2: the first simple coroot is long
_SP4 = {"rank": 2, "simple_coroots": [[1, 0], [0, 1]], "simple_roots": [[2, -1], [-2, 2]]}
# type G2: the first simple coroot is long
_G2 = {"rank": 2, "simple_coroots": [[1, 0], [0, 1]], "simple_roots": [[2, -1], [-3, 2]]}
_SL2XSL2 = {"rank": 2, "simple_coroots": [[1, 0], [0, 1]], "simple_roots": [[2, 0], [0, 2]]}


def _entry(datum, b, n, q):
    out = dict(copy.deepcopy(datum))
    out.update({"B": b, "n": n, "q": q})
    return out


CATALOG = {
    "sl2-n1": _entry(_SL2, [[2]], 1, 7),
    "sl2-n2": _entry(_SL2, [[2]], 2, 5),
    "sl2-n3": _entry(_SL2, [[2]], 3, 7),
    "sl2-n4": _entry(_SL2, [[2]], 4, 17),
    "sl2-n5": _entry(_SL2, [[2]], 5, 11),
    "sl2-n6": _entry(_SL2, [[2]], 6, 13),
    "sl2-n4-Q2": _entry(_SL2, [[4]], 4, 17),
    "sl2-n6-Q3": _entry(_SL2, [[6]], 6, 13),
    "sl2-n9-Q3": _entry(_SL2, [[6]], 9, 19),
    "pgl2-n2": _entry(_PGL2, [[1]], 2, 5),
    "pgl2-n4": _entry(_PGL2, [[1]], 4, 17),
    "sl3-n1": _entry(_SL3, [[2, -1], [-1, 2]], 1, 7),
    "sl3-n3": _entry(_SL3, [[2, -1], [-1, 2]], 3, 7),
    "sp4-n1": _entry(_SP4, [[4, -2], [-2, 2]], 1, 5),
    "sp4-n2": _entry(_SP4, [[4, -2], [-2, 2]], 2, 5),
    "sp4-n4": _entry(_SP4, [[4, -2], [-2, 2]], 4, 17),
    "g2-n1": _entry(_G2, [[6, -3], [-3, 2]], 1, 7),
    "g2-n3": _entry(_G2, [[6, -3], [-3, 2]], 3, 7),
    "sl2xsl2-n2": _entry(_SL2XSL2, [[2, 0], [0, 2]], 2, 5),
}


def catalog_names() -> list:
    return sorted(CATALOG)


def catalog_entry(name: str) -> dict:
    try:
        return copy.deepcopy(CATALOG[name])
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names())}") from None
