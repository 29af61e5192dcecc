"""Exact minimum partition of a Boolean on-set into cubes.

Cubes are ``(value, mask)`` integer pairs over ``width`` bits: set bits of
``mask`` are don't-cares and the matching bits of ``value`` are zero.

The chosen cubes must be pairwise disjoint on the on-set, because each one
is realized as a group of X flips and a minterm hit twice would flip back.
Candidate cubes are every cube inside ``onset | dont_cares``, generated by
Quine-McCluskey merging. The partition is found by a memoized branch and
bound that splits the residual on-set into independent components and
branches on the minterm with the fewest candidate cubes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Cube = tuple[int, int]

# candidate-block checks allowed per minimization before settling for the incumbent
DEFAULT_MAX_WORK = 300_000


def cube_covers(cube: Cube, minterm: int) -> bool:
    value, mask = cube
    return (minterm & ~mask) == value


def cube_minterms(cube: Cube) -> list[int]:
    value, mask = cube
    free = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    out = []
    for k in range(1 << len(free)):
        v = value
        for j, bit in enumerate(free):
            if k >> j & 1:
                v |= bit
        out.append(v)
    return out


def all_implicants(care: Iterable[int], width: int) -> list[Cube]:
    """Every cube contained in ``care`` (minterms included)."""
    current = {(v, 0) for v in care}
    out: set[Cube] = set()
    while current:
        out |= current
        nxt: set[Cube] = set()
        for value, mask in current:
            for i in range(width):
                bit = 1 << i
                if (mask | value) & bit:
                    continue
                if (value | bit, mask) in current:
                    nxt.add((value, mask | bit))
        current = nxt
    return sorted(out)


def _footprints(row_of: dict[int, int], dont_cares: Iterable[int], width: int) -> dict[Cube, int]:
    """Every cube inside on-set plus don't-cares, mapped to the on-set rows it covers.

    Same merging as ``all_implicants``; a merged cube's rows are the union
    of its two halves' rows, so no cube is ever expanded.
    """
    current = {(v, 0): 1 << r for v, r in row_of.items()}
    current.update({(v, 0): 0 for v in dont_cares})
    out: dict[Cube, int] = {}
    while current:
        out.update(current)
        nxt: dict[Cube, int] = {}
        for (value, mask), rows in current.items():
            for i in range(width):
                bit = 1 << i
                if (mask | value) & bit:
                    continue
                other = current.get((value | bit, mask))
                if other is not None:
                    nxt[(value, mask | bit)] = rows | other
        current = nxt
    return out


@dataclass
class PartitionResult:
    blocks: list[int]
    optimal: bool
    nodes: int


class _Budget(Exception):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _PartitionSearch:
    """Memoized branch and bound over residual row sets."""

    def __init__(self, blocks: list[int], rows: int, max_work: int):
        self.ordered = sorted(set(blocks), key=lambda b: (-b.bit_count(), b))
        self.by_row: list[list[int]] = [[] for _ in range(rows)]
        for b in self.ordered:
            for r in _bits(b):
                self.by_row[r].append(b)
        self.max_work = max_work
        self.work = 0
        self.nodes = 0
        self.top = (1 << rows) - 1
        self.incumbent: list[int] | None = None
        self.exact: dict[int, list[int]] = {}
        self.lower: dict[int, int] = {}

    def _valid(self, r: int, uncovered: int) -> list[int]:
        candidates = self.by_row[r]
        self.work += len(candidates)
        return [b for b in candidates if not b & ~uncovered]

    def _record(self, uncovered: int, solution: list[int]) -> None:
        self.exact[uncovered] = solution
        if uncovered == self.top:
            self.incumbent = solution

    def _components(self, uncovered: int, reach: dict[int, int]) -> list[int]:
        comps = []
        rest = uncovered
        while rest:
            comp = frontier = rest & -rest
            while frontier:
                grown = 0
                for r in _bits(frontier):
                    grown |= reach[r]
                frontier = grown & ~comp
                comp |= grown
            comps.append(comp)
            rest &= ~comp
        return comps

    def _bound(self, uncovered: int, valid: dict[int, list[int]], reach: dict[int, int]) -> int:
        largest = max(v[0].bit_count() for v in valid.values())
        size_bound = -(-uncovered.bit_count() // largest)
        # rows that no single block can share each need their own block
        picked = 0
        independent = 0
        for r in sorted(valid, key=lambda r: len(valid[r])):
            if not reach[r] & picked:
                picked |= 1 << r
                independent += 1
        return max(size_bound, independent, self.lower.get(uncovered, 0))

    def solve(self, uncovered: int, limit: int) -> list[int] | None:
        """Minimum partition of ``uncovered`` if it has fewer than ``limit`` blocks."""
        if not uncovered:
            return [] if limit > 0 else None
        known = self.exact.get(uncovered)
        if known is not None:
            return known if len(known) < limit else None
        if self.lower.get(uncovered, 0) >= limit:
            return None
        self.nodes += 1
        if self.work > self.max_work:
            raise _Budget
        valid = {r: self._valid(r, uncovered) for r in _bits(uncovered)}
        # a row whose only fitting block is itself is forced; take them all at once
        forced = 0
        for r, blocks in valid.items():
            if len(blocks) == 1:
                forced |= 1 << r
        if forced:
            count = forced.bit_count()
            sub = self.solve(uncovered & ~forced, limit - count)
            if sub is None:
                self.lower[uncovered] = max(self.lower.get(uncovered, 0), limit)
                return None
            best = [1 << r for r in _bits(forced)] + sub
            self._record(uncovered, best)
            return best
        reach = {}
        for r, blocks in valid.items():
            acc = 0
            for b in blocks:
                acc |= b
            reach[r] = acc
        comps = self._components(uncovered, reach)
        if len(comps) > 1:
            return self._solve_split(uncovered, comps, limit)
        bound = self._bound(uncovered, valid, reach)
        if bound >= limit:
            self.lower[uncovered] = max(self.lower.get(uncovered, 0), bound)
            return None
        pivot = min(valid, key=lambda r: (len(valid[r]), r))
        best = None
        for b in valid[pivot]:
            cap = len(best) - 1 if best is not None else limit - 1
            sub = self.solve(uncovered & ~b, cap)
            if sub is not None:
                best = [b] + sub
                if len(best) <= bound:
                    break
        if best is None:
            self.lower[uncovered] = max(self.lower.get(uncovered, 0), limit)
            return None
        self._record(uncovered, best)
        return best

    def _solve_split(self, uncovered: int, comps: list[int], limit: int) -> list[int] | None:
        floors = [self.lower.get(c, 1) for c in comps]
        if sum(floors) >= limit:
            self.lower[uncovered] = max(self.lower.get(uncovered, 0), sum(floors))
            return None
        solution: list[int] = []
        for i, comp in enumerate(comps):
            cap = limit - len(solution) - sum(floors[i + 1:])
            sub = self.solve(comp, cap)
            if sub is None:
                self.lower[uncovered] = max(self.lower.get(uncovered, 0), limit)
                return None
            solution.extend(sub)
        self._record(uncovered, solution)
        return solution

    def greedy(self) -> list[int]:
        """Better of largest-block-first and lowest-row-largest-block."""
        first = []
        taken = 0
        for b in self.ordered:
            if not b & taken:
                first.append(b)
                taken |= b
        second = []
        uncovered = self.top
        while uncovered:
            r = (uncovered & -uncovered).bit_length() - 1
            b = next(b for b in self.by_row[r] if not b & ~uncovered)
            second.append(b)
            uncovered &= ~b
        return min(first, second, key=len)


def minimum_partition(blocks: Sequence[int], rows: int, initial: Sequence[int] | None = None,
                      max_work: int = DEFAULT_MAX_WORK) -> PartitionResult:
    """Fewest pairwise-disjoint ``blocks`` (row bitmasks) whose union is every row.

    All singleton rows must be among ``blocks``. ``initial`` is an optional
    known partition used as the starting incumbent. When ``max_work``
    candidate checks are spent the best partition found so far is returned
    with ``optimal=False``.
    """
    full = (1 << rows) - 1
    if rows == 0:
        return PartitionResult([], True, 0)
    blocks = [b for b in blocks if b and not b & ~full]
    search = _PartitionSearch(blocks, rows, max_work)
    if any((1 << r) not in search.by_row[r] for r in range(rows)):
        raise ValueError("every singleton row must be an available block")
    best = search.greedy()
    if initial is not None:
        initial = list(initial)
        union = 0
        for b in initial:
            if b & union:
                raise ValueError("initial blocks overlap")
            union |= b
        if union != full:
            raise ValueError("initial blocks do not cover every row")
        if len(initial) < len(best):
            best = initial
    try:
        found = search.solve(full, len(best))
    except _Budget:
        if search.incumbent is not None and len(search.incumbent) < len(best):
            best = search.incumbent
        return PartitionResult(sorted(best), False, search.nodes)
    if found is not None:
        best = found
    return PartitionResult(sorted(best), True, search.nodes)


def minimize(onset: Iterable[int], width: int, dont_cares: Iterable[int] = (),
             initial: Iterable[Cube] | None = None,
             max_work: int = DEFAULT_MAX_WORK) -> tuple[list[Cube], bool]:
    """Fewest cubes partitioning ``onset``; returns ``(cubes, optimal)``.

    Cubes may also cover ``dont_cares`` (overlaps there are allowed) but
    never any other minterm. ``initial`` seeds the search with a known
    cube partition of the onset.
    """
    onset = sorted(set(onset))
    dc = set(dont_cares) - set(onset)
    limit = 1 << width
    if any(not 0 <= v < limit for v in onset) or any(not 0 <= v < limit for v in dc):
        raise ValueError(f"minterm outside width {width}")
    if not onset:
        return [], True
    row_of = {v: r for r, v in enumerate(onset)}

    def row_mask(cube: Cube) -> int:
        mask = 0
        for v in cube_minterms(cube):
            r = row_of.get(v)
            if r is not None:
                mask |= 1 << r
        return mask

    # one representative cube per on-set footprint: the one with most don't-cares
    by_mask: dict[int, Cube] = {}
    for cube, mask in sorted(_footprints(row_of, dc, width).items()):
        if not mask:
            continue
        held = by_mask.get(mask)
        if held is None or (-cube[1].bit_count(), cube) < (-held[1].bit_count(), held):
            by_mask[mask] = cube
    seed = None
    if initial is not None:
        seed = []
        for cube in initial:
            mask = row_mask(cube)
            if any(v not in row_of and v not in dc for v in cube_minterms(cube)):
                raise ValueError(f"initial cube {cube} leaves the care set")
            seed.append(mask)
            by_mask.setdefault(mask, cube)
    result = minimum_partition(list(by_mask), len(onset), seed, max_work)
    return sorted(by_mask[b] for b in result.blocks), result.optimal
