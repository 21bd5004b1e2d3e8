"""Exception hierarchy shared by the whole package."""


class CoclassError(Exception):
    """Base class for every mathematical or data error raised here."""


class NotUniserial(CoclassError):
    pass


class NotACocycle(CoclassError):
    pass


class NoComplement(CoclassError):
    pass


class DivNotDivisible(CoclassError):
    pass


class PrecisionTooLow(CoclassError):
    pass


class PrecisionUnstable(CoclassError):
    pass


class NotMapped(CoclassError):
    pass


class NotAMorphism(CoclassError):
    pass


class BelowX0(CoclassError):
    def __init__(self, x, x0):
        super().__init__(f"x = {x} is below the stability bound x0 = {x0}")
        self.x = x
        self.x0 = x0


class CapExceeded(CoclassError):
    pass


class NotAGroup(CoclassError):
    pass
