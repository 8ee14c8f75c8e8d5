"""Size guards.

Exhaustive operations check these bounds before starting and raise
SizeGuardExceeded instead of launching a blowup.  `element_bound` caps
element-wise table work (arithmetic, action tables, hom enumeration bases);
`lattice_bound` caps full submodule-lattice enumeration and every decider
built on it; `ambient_bound` caps the cogenerator power used as the injective
hull ambient; `hom_bound` caps full hom-set/endomorphism enumerations (those
are counted exactly before materializing).  All are process-wide and
configurable (the CLI exposes --seed-guard for the lattice bound).
"""

from dataclasses import dataclass

from .errors import SizeGuardExceeded


@dataclass
class Guards:
    element_bound: int = 4096
    lattice_bound: int = 64
    ambient_bound: int = 4096
    hom_bound: int = 1 << 20


_current = Guards()


def get_guards() -> Guards:
    return _current


def set_guards(element_bound=None, lattice_bound=None, ambient_bound=None,
               hom_bound=None) -> Guards:
    """Override selected bounds; returns the live config."""
    if element_bound is not None:
        _current.element_bound = int(element_bound)
    if lattice_bound is not None:
        _current.lattice_bound = int(lattice_bound)
    if ambient_bound is not None:
        _current.ambient_bound = int(ambient_bound)
    if hom_bound is not None:
        _current.hom_bound = int(hom_bound)
    return _current


def check_element_bound(what, size, cap=None):
    """cap, when given, tightens the configured bound (never loosens it)."""
    bound = _current.element_bound if cap is None else min(cap, _current.element_bound)
    if size > bound:
        raise SizeGuardExceeded(what, size, bound)


def check_lattice_bound(what, size):
    if size > _current.lattice_bound:
        raise SizeGuardExceeded(what, size, _current.lattice_bound)


def check_ambient_bound(what, size):
    if size > _current.ambient_bound:
        raise SizeGuardExceeded(what, size, _current.ambient_bound)


def check_hom_bound(what, size):
    if size > _current.hom_bound:
        raise SizeGuardExceeded(what, size, _current.hom_bound)
