"""Exception types raised across the package.

Every error is a ``ValueError`` so callers that only care about "bad input"
can catch one thing; the CLI maps all of them to exit status 2.
"""


class CmrError(ValueError):
    pass


# words
class EmptySet(CmrError):
    pass


class EmptyWordForbidden(CmrError):
    pass


class RedundantWord(CmrError):
    def __init__(self, inner, outer):
        self.inner = inner
        self.outer = outer
        super().__init__(f"forbidden set is redundant: {inner} is a subword of {outer}")


class SymbolOutsideAlphabet(CmrError):
    pass


class IdenticalWords(CmrError):
    pass


# graph
class NondeterministicState(CmrError):
    def __init__(self, state, label):
        self.state = state
        self.label = label
        super().__init__(f"state {state} has two outgoing edges labeled {label!r}")


class DanglingEdge(CmrError):
    pass


class UnknownLabel(CmrError):
    pass


class InvalidPartition(CmrError):
    pass


class InconsistentBlock(CmrError):
    def __init__(self, block, label):
        self.block = block
        self.label = label
        super().__init__(f"block {sorted(block)} is not merge-consistent on label {label!r}")


# cmr
class FailureUndefined(CmrError):
    pass


class SinkHasNoEdges(CmrError):
    pass


class NotTwoWords(CmrError):
    pass


class UnequalLengths(CmrError):
    pass


class ShapeMismatch(CmrError):
    pass


class AlphabetTooSmall(CmrError):
    pass


# minimize / oracle
class DegenerateLanguage(CmrError):
    pass


class NotFollowerSeparated(CmrError):
    pass


class OrderTooSmall(CmrError):
    pass


class ParseError(CmrError):
    pass
