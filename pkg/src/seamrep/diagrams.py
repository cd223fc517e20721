"""Planar (a,b)-diagrams: noncrossing perfect matchings on a pair of
boundaries, with exact loop-counting concatenation.

Points are addressed as (side, index) with 1-based indices counted top to
bottom on each side.  Internally a diagram stores its pairing over "disk"
positions: left points 1..a top to bottom get positions 0..a-1, right points
1..b get positions a+b-1 down to a, so that the disk order runs down the left
side and back up the right side and noncrossing is a pure interleaving test.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb


class ShapeMismatch(ValueError):
    """Composition or addition attempted between incompatible shapes."""


class IndexOutOfRange(ValueError):
    """A generator or point index outside the valid range."""


class ParityMismatch(ValueError):
    """Requested through-line count has the wrong parity."""


LEFT = "L"
RIGHT = "R"


class Diagram:
    """An (a,b)-diagram: a noncrossing perfect matching on a+b points."""

    __slots__ = ("left", "right", "pairs", "_hash")

    def __init__(self, left: int, right: int, pairs, *, _checked=False):
        self.left = left
        self.right = right
        canon = tuple(sorted((a, b) if a < b else (b, a) for a, b in pairs))
        self.pairs = canon
        self._hash = None
        if not _checked:
            self._validate()

    # -- point addressing

    def disk(self, side: str, index: int) -> int:
        if side == LEFT:
            if not 1 <= index <= self.left:
                raise IndexOutOfRange(f"left point {index} of {self.left}")
            return index - 1
        if not 1 <= index <= self.right:
            raise IndexOutOfRange(f"right point {index} of {self.right}")
        return self.left + (self.right - index)

    def point(self, disk: int) -> tuple[str, int]:
        if disk < self.left:
            return (LEFT, disk + 1)
        return (RIGHT, self.left + self.right - disk)

    def _validate(self):
        total = self.left + self.right
        if total % 2:
            raise ValueError("odd number of boundary points")
        seen = [False] * total
        for a, b in self.pairs:
            if not (0 <= a < total and 0 <= b < total) or a == b:
                raise ValueError("bad pair")
            if seen[a] or seen[b]:
                raise ValueError("not a perfect matching")
            seen[a] = seen[b] = True
        if not all(seen):
            raise ValueError("not a perfect matching")
        # interleaving test via a stack over disk order
        partner = self.partner_map()
        stack = []
        for p in range(total):
            q = partner[p]
            if q > p:
                stack.append(q)
            else:
                if not stack or stack[-1] != p:
                    raise ValueError("crossing pairs")
                stack.pop()

    def partner_map(self) -> dict[int, int]:
        m = {}
        for a, b in self.pairs:
            m[a] = b
            m[b] = a
        return m

    # -- identity and hashing

    def __eq__(self, other):
        return (
            isinstance(other, Diagram)
            and self.left == other.left
            and self.right == other.right
            and self.pairs == other.pairs
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.left, self.right, self.pairs))
        return self._hash

    def __lt__(self, other: Diagram) -> bool:
        return (self.left, self.right, self.pairs) < (
            other.left,
            other.right,
            other.pairs,
        )

    # -- elementary queries

    def through_count(self) -> int:
        return sum(1 for a, b in self.pairs if a < self.left <= b)

    def is_monic(self) -> bool:
        return self.through_count() == self.right

    def is_epic(self) -> bool:
        return self.through_count() == self.left

    def through_pairs(self):
        """Through lines as (left index, right index), sorted by left index."""
        out = []
        for a, b in self.pairs:
            if a < self.left <= b:
                out.append((a + 1, self.left + self.right - b))
        out.sort()
        return out

    def left_arcs(self):
        """Arcs with both endpoints on the left, as 1-based index pairs."""
        return sorted(
            (a + 1, b + 1) for a, b in self.pairs if b < self.left
        )

    def right_arcs(self):
        """Arcs with both endpoints on the right, as 1-based index pairs."""
        n = self.left + self.right
        return sorted(
            tuple(sorted((n - a, n - b))) for a, b in self.pairs if a >= self.left
        )

    # -- serialization

    def to_text(self) -> str:
        body = ",".join(
            "(%s%d,%s%d)" % (sa, ia, sb, ib)
            for (sa, ia), (sb, ib) in (
                (self.point(a), self.point(b)) for a, b in self.pairs
            )
        )
        return f"{self.left},{self.right}:[{body}]"

    @classmethod
    def from_text(cls, text: str) -> Diagram:
        head, body = text.split(":", 1)
        left, right = (int(x) for x in head.split(","))
        body = body.strip()[1:-1]
        pairs = []
        if body:
            for chunk in body.split("),("):
                chunk = chunk.strip("()")
                pa, pb = chunk.split(",")
                pairs.append(
                    (
                        _parse_point(pa, left, right),
                        _parse_point(pb, left, right),
                    )
                )
        return cls(left, right, pairs)

    def to_json(self) -> list:
        return [
            [list(self.point(a)), list(self.point(b))] for a, b in self.pairs
        ]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Diagram({self.to_text()})"


def _parse_point(token: str, left: int, right: int) -> int:
    token = token.strip()
    side, idx = token[0], int(token[1:])
    if side == LEFT:
        return idx - 1
    return left + (right - idx)


def from_links(left: int, right: int, links) -> Diagram:
    """Build a diagram from (side,index) link pairs, e.g. (("L",1),("R",2))."""
    pairs = []
    for (sa, ia), (sb, ib) in links:
        da = ia - 1 if sa == LEFT else left + (right - ia)
        db = ib - 1 if sb == LEFT else left + (right - ib)
        pairs.append((da, db))
    return Diagram(left, right, pairs)


def identity(n: int) -> Diagram:
    """The (n,n)-diagram joining left i to right i."""
    if n < 0:
        raise ValueError("negative size")
    return Diagram(n, n, [(i, 2 * n - 1 - i) for i in range(n)], _checked=True)


def generator(n: int, i: int) -> Diagram:
    """The diagram E_i: a cup and cap at positions i, i+1."""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} for {n} strands")
    pairs = [(i - 1, i), (2 * n - 1 - i, 2 * n - i)]
    for j in range(1, n + 1):
        if j not in (i, i + 1):
            pairs.append((j - 1, 2 * n - j))
    return Diagram(n, n, pairs, _checked=True)


def reflect(d: Diagram) -> Diagram:
    """Reflection through a vertical mirror; swaps the two sides."""
    a, b = d.left, d.right
    total = a + b

    def flip(p: int) -> int:
        if p < a:  # left i -> new right i
            i = p + 1
            return b + (a - i)
        i = total - p  # right index
        return i - 1

    return Diagram(b, a, [(flip(x), flip(y)) for x, y in d.pairs], _checked=True)


def compose(d: Diagram, e: Diagram) -> tuple[Diagram, int]:
    """Concatenate an (a,b)-diagram with a (b,c)-diagram.

    Returns the resulting (a,c)-diagram together with the number of closed
    loops removed at the interface.
    """
    if d.right != e.left:
        raise ShapeMismatch(f"cannot compose right {d.right} with left {e.left}")
    a, b, c = d.left, d.right, e.right
    pd = d.partner_map()
    pe = e.partner_map()
    visited: set[int] = set()  # interface indices 1..b used by open strands

    def walk(kind: str, disk: int):
        """Follow a strand from an external point to its other endpoint.

        States are ('D', disk-in-d) or ('E', disk-in-e); each step takes the
        partner within the current diagram and, if it lies on the interface,
        hops across.
        """
        while True:
            if kind == "D":
                p = pd[disk]
                if p < a:
                    return ("D", p)
                j = a + b - p  # interface index of d's right point
                visited.add(j)
                kind, disk = "E", j - 1
            else:
                p = pe[disk]
                if p >= b:
                    return ("E", p)
                j = p + 1  # interface index of e's left point
                visited.add(j)
                kind, disk = "D", a + (b - j)

    def out_disk(kind: str, disk: int) -> int:
        if kind == "D":  # a left point of the result
            return disk
        j = b + c - disk  # right point index in e, and in the result
        return a + (c - j)

    starts = [("D", p) for p in range(a)]
    starts += [("E", b + (c - j)) for j in range(1, c + 1)]
    pairs = []
    used: set[int] = set()
    for kind, disk in starts:
        o = out_disk(kind, disk)
        if o in used:
            continue
        end = walk(kind, disk)
        o2 = out_disk(*end)
        pairs.append((o, o2) if o < o2 else (o2, o))
        used.add(o)
        used.add(o2)

    # interface points not visited by open strands lie on closed loops
    loops = 0
    for j in range(1, b + 1):
        if j in visited:
            continue
        loops += 1
        cur = j
        while True:
            visited.add(cur)
            p = pd[a + (b - cur)]  # partner within d, another right point
            cur = a + b - p
            visited.add(cur)
            p = pe[cur - 1]  # partner within e, another left point
            cur = p + 1
            if cur == j:
                break
    return Diagram(a, c, pairs, _checked=True), loops


def through_count(d: Diagram) -> int:
    return d.through_count()


def is_monic(d: Diagram) -> bool:
    return d.is_monic()


def is_epic(d: Diagram) -> bool:
    return d.is_epic()


@lru_cache(maxsize=None)
def _matchings(total: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All noncrossing perfect matchings of points 0..total-1."""
    if total == 0:
        return ((),)
    if total % 2:
        return ()
    out = []
    for gap in range(1, total, 2):
        inner = _matchings(gap - 1)
        outer = _matchings(total - gap - 1)
        for m_in in inner:
            shifted_in = tuple((x + 1, y + 1) for x, y in m_in)
            for m_out in outer:
                shifted_out = tuple((x + gap + 1, y + gap + 1) for x, y in m_out)
                out.append(((0, gap),) + shifted_in + shifted_out)
    return tuple(out)


def enumerate_all(n: int) -> list[Diagram]:
    """All (n,n)-diagrams, in canonical (lexicographic) order."""
    out = [
        Diagram(n, n, pairs, _checked=True) for pairs in _matchings(2 * n)
    ]
    out.sort()
    return out


def enumerate_monic(n: int, d: int) -> list[Diagram]:
    """All monic (n,d)-diagrams, in canonical (lexicographic) order."""
    if d < 0 or d > n or (n - d) % 2:
        raise ParityMismatch(f"no monic ({n},{d})-diagrams")
    out = []
    # choose defect positions; remaining points pair up without covering them
    for defects in combinations(range(1, n + 1), d):
        rest = [i for i in range(1, n + 1) if i not in defects]
        segments = []
        ok = True
        prev = 0
        for df in defects + (n + 1,):
            seg = [i for i in rest if prev < i < df]
            if len(seg) % 2:
                ok = False
                break
            segments.append(seg)
            prev = df
        if not ok:
            continue
        seg_matchings = [_matchings(len(seg)) for seg in segments]

        def build(idx, acc):
            if idx == len(segments):
                pairs = list(acc)
                for r, left_idx in enumerate(defects):
                    pairs.append((left_idx - 1, n + (d - (r + 1))))
                out.append(Diagram(n, d, pairs, _checked=True))
                return
            seg = segments[idx]
            for m in seg_matchings[idx]:
                build(
                    idx + 1,
                    acc + [(seg[x] - 1, seg[y] - 1) for x, y in m],
                )

        build(0, [])
    out.sort()
    return out


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def monic_count(n: int, d: int) -> int:
    """dim of the span of monic (n,d)-diagrams, by the ballot formula."""
    m = (n - d) // 2
    second = comb(n, m - 1) if m >= 1 else 0
    return comb(n, m) - second
