"""Exception taxonomy for modlab.

Every structural rejection carries enough context to reproduce the failing
check (the violating generator triple, the offending size, the bad token).
"""


class ModlabError(Exception):
    """Base class for all modlab errors."""


class NonAssociative(ModlabError):
    """Ring multiplication fails associativity on a generator triple."""

    def __init__(self, triple, lhs, rhs):
        self.triple = triple
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"generator tuple {triple}: grouped left gives {lhs}, grouped right gives {rhs}")


class BadUnity(ModlabError):
    """The designated unity does not act as identity on some generator."""

    def __init__(self, generator, side, got):
        self.generator = generator
        self.side = side
        self.got = got
        super().__init__(f"unity fails on generator {generator} ({side}): got {got}")


class OrderMismatch(ModlabError):
    """A structure constant or action entry violates generator order divisibility."""

    def __init__(self, where, detail):
        self.where = where
        self.detail = detail
        super().__init__(f"{where}: {detail}")


class UnknownName(ModlabError):
    """builtin_ring was asked for a name outside its catalog."""


class BadParams(ModlabError):
    """builtin_ring parameters are invalid for the requested constructor."""


class RingMismatch(ModlabError):
    """Operation mixing modules over different rings."""


class NotASubmodule(ModlabError):
    """A set of elements is not closed under addition or the ring action."""

    def __init__(self, detail):
        self.detail = detail
        super().__init__(detail)


class NotAMorphism(ModlabError):
    """A matrix does not define a module homomorphism."""

    def __init__(self, detail):
        self.detail = detail
        super().__init__(detail)


class SizeGuardExceeded(ModlabError):
    """A size guard would be exceeded; raise rather than start a blowup."""

    def __init__(self, what, size, bound):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: size {size} exceeds guard {bound}")


class PreconditionFailed(ModlabError):
    """A documented operation precondition does not hold for the input."""


class ParseError(ModlabError):
    """Description file rejected; carries line and column."""

    def __init__(self, line, col, detail):
        self.line = line
        self.col = col
        self.detail = detail
        super().__init__(f"line {line}, col {col}: {detail}")


class UnknownCatalog(ModlabError):
    """CLI asked for a catalog id that does not exist."""
