"""Exception hierarchy shared by all modules."""


class MeasuringLabError(Exception):
    """Base class for all structured failures."""


class AmbientMismatch(MeasuringLabError):
    pass


class FieldMismatch(MeasuringLabError):
    pass


class DimMismatch(MeasuringLabError):
    pass


class AxiomFailure(MeasuringLabError):
    """An axiom check failed; carries the axiom name and the witnessing basis indices."""

    def __init__(self, axiom, indices=(), detail=""):
        self.axiom = axiom
        self.indices = tuple(indices)
        self.detail = detail
        msg = f"{axiom} fails at basis indices {self.indices}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class AssociativityFailure(AxiomFailure):
    def __init__(self, i, j, k):
        super().__init__("associativity", (i, j, k))


class UnitFailure(AxiomFailure):
    def __init__(self, side, i):
        super().__init__(f"unit({side})", (i,))


class CoassociativityFailure(AxiomFailure):
    def __init__(self, i):
        super().__init__("coassociativity", (i,))


class CounitFailure(AxiomFailure):
    def __init__(self, side, i):
        super().__init__(f"counit({side})", (i,))


class MorphismFailure(AxiomFailure):
    pass


class ActionAssociativityFailure(AxiomFailure):
    def __init__(self, i, j):
        super().__init__("action associativity", (i, j))


class ActionUnitFailure(AxiomFailure):
    def __init__(self, i):
        super().__init__("action unit", (i,))


class CoactionCoassociativityFailure(AxiomFailure):
    def __init__(self, i):
        super().__init__("coaction coassociativity", (i,))


class CoactionCounitFailure(AxiomFailure):
    def __init__(self, i):
        super().__init__("coaction counit", (i,))


class DiagramFailure(AxiomFailure):
    """A named compatibility diagram does not commute."""

    def __init__(self, name, indices=(), detail=""):
        super().__init__(name, indices, detail)


class BudgetExceeded(MeasuringLabError):
    pass


class HintInvalid(MeasuringLabError):
    def __init__(self, index, detail=""):
        self.index = index
        super().__init__(f"hint {index} is not a valid algebra morphism" + (f": {detail}" if detail else ""))


class TruncationInsufficient(MeasuringLabError):
    pass


class UnmatchedPoint(MeasuringLabError):
    pass


class NotMeasuring(MeasuringLabError):
    pass


class ImageEscapesTruncation(MeasuringLabError):
    pass


class FibrewiseAdjunctionInvalid(MeasuringLabError):
    def __init__(self, obj, detail=""):
        self.obj = obj
        super().__init__(f"fibrewise adjunction invalid at {obj!r}" + (f": {detail}" if detail else ""))


class BijectionFailure(MeasuringLabError):
    def __init__(self, c, d, detail=""):
        self.pair = (c, d)
        super().__init__(f"hom-set bijection fails at ({c!r}, {d!r})" + (f": {detail}" if detail else ""))


class ParseError(MeasuringLabError):
    pass


class SchemaError(MeasuringLabError):
    pass
