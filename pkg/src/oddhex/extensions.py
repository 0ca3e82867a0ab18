"""Data shapes for the three-path extension engine.

These are plain containers with no search logic, shared by the engine
(augment) and the brute-force checker (oracle).  A TriPod is three paths
from a common apex v to targets a (same color as v) and b, c (the other
color), disjoint except at v.  Extensions describe how the tripod grows
toward a target set X; the replacement paths P1'..P3' may differ from
the originals, which is why every extension carries its own copies.

Color conventions are relative: "A" below means the color of the
tripod's apex, "B" the other color.  The canonical presentation has
v, a on the Left, but the engine is also applied color-swapped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

Path = Tuple[int, ...]


@dataclass(frozen=True)
class TriPod:
    v: int
    a: int
    b: int
    c: int
    p1: Path  # v .. a
    p2: Path  # v .. b
    p3: Path  # v .. c

    def paths(self) -> Tuple[Path, Path, Path]:
        return (self.p1, self.p2, self.p3)

    def vertices(self) -> frozenset:
        return frozenset(self.p1) | frozenset(self.p2) | frozenset(self.p3)


@dataclass(frozen=True)
class Extension1:
    """Outcome (1): u in B on the replacement a-path, P4' runs u to x in X.

    All of P1'..P4' are disjoint from each other and from X except:
    v' starts P1'..P3', u is on P1' and starts P4', and x ends P4'.
    """

    v: int          # v', in A
    u: int          # in B, on p1
    x: int          # in X
    p1: Path
    p2: Path
    p3: Path
    p4: Path        # u .. x


@dataclass(frozen=True)
class Extension2:
    """Outcome (2): the b-side path detours through t then s; P4' joins
    u on P1' to s, and P5' joins t to x in X.

    ``p2`` here is whichever of the two B-ending replacement paths
    carries t and s (the lemma's b and c are interchangeable); ``p3`` is
    the other one.
    """

    v: int          # v', in A
    u: int          # in B, on p1
    s: int          # in A, on p2
    t: int          # in B, on p2, between v and s
    x: int          # in X
    p1: Path
    p2: Path        # v .. t .. s .. (b or c)
    p3: Path
    p4: Path        # u .. s
    p5: Path        # t .. x


@dataclass(frozen=True)
class ExtensionA:
    """Strong outcome (A): as outcome (1) but with x in X ∩ A."""

    v: int
    u: int
    x: int          # in X ∩ A
    p1: Path
    p2: Path
    p3: Path
    p4: Path


@dataclass(frozen=True)
class ExtensionB:
    """Strong outcome (B): P4' = u..s..x with x in X ∩ B, and P5' = s..t
    where t lies in X or on P2' or P3'."""

    v: int          # v', in A
    u: int          # in B, on p1
    s: int          # in A, interior of p4
    t: int          # in B, in X or on p2/p3
    x: int          # in X ∩ B
    p1: Path
    p2: Path
    p3: Path
    p4: Path        # u .. s .. x
    p5: Path        # s .. t


@dataclass(frozen=True)
class ExtensionC:
    """Strong outcome (C): same shape as outcome (2)."""

    v: int
    u: int
    s: int
    t: int
    x: int
    p1: Path
    p2: Path
    p3: Path
    p4: Path
    p5: Path


@dataclass(frozen=True)
class ExtensionD:
    """Strong outcome (D): v', u, w, t, a in order along P1'; P4' = u..s..x,
    P5' = s..t, P6' = w..y with x, y in X ∩ B (x may equal y)."""

    v: int          # v', in A
    u: int          # in B, on p1
    w: int          # in A, on p1 after u
    t: int          # in B, on p1 after w
    s: int          # in A, interior of p4
    x: int          # in X ∩ B
    y: int          # in X ∩ B; may equal x
    p1: Path
    p2: Path
    p3: Path
    p4: Path        # u .. s .. x
    p5: Path        # s .. t
    p6: Path        # w .. y


@dataclass(frozen=True)
class AugmentingSequence:
    """The ladder Q1..Qk: Q1 leaves the a-path, consecutive paths are
    strung along the tripod, and the last one lands in X.

    ``endpoints`` is (v1, .., v_{2k}) with path Qi running v_{2i-1} to
    v_{2i}.  ``index`` is the first position whose endpoint color breaks
    the alternating pattern (odd position in A or even position in B),
    or 2k+1 when none does.
    """

    paths: Tuple[Path, ...]
    index: int = field(default=0)

    @property
    def length(self) -> int:
        return len(self.paths)

    @property
    def endpoints(self) -> Tuple[int, ...]:
        out = []
        for q in self.paths:
            out.append(q[0])
            out.append(q[-1])
        return tuple(out)

    def flattened(self) -> Tuple[int, ...]:
        out = []
        for q in self.paths:
            out.extend(q)
        return tuple(out)


EXTENSION_KINDS = {
    Extension1: "1",
    Extension2: "2",
    ExtensionA: "A",
    ExtensionB: "B",
    ExtensionC: "C",
    ExtensionD: "D",
}


def extension_kind(e) -> str:
    return EXTENSION_KINDS[type(e)]
