"""
Partition Combinatorics
Partitions, r-cores and r-quotients on the abacus, dominance, and the root
lattice bookkeeping (kappa, cl, dimension-vector compatibility)
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Sequence, Tuple

from sympy.utilities.iterables import partitions as _sympy_partitions

logger = logging.getLogger(__name__)


class PartitionError(ValueError):
    """Raised for malformed partitions or inconsistent combinatorial data"""


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing positive parts; the empty tuple is the empty partition"""
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for part in parts:
            if isinstance(part, bool) or not isinstance(part, int) or part <= 0:
                raise PartitionError(f"parts must be positive integers: {parts}")
        for left, right in zip(parts, parts[1:]):
            if left < right:
                raise PartitionError(f"parts must be weakly decreasing: {parts}")

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        """Drop trailing zeros, keep the rest as given"""
        return cls(tuple(int(p) for p in parts if p != 0))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, j: int) -> int:
        """0-based part, zero past the end"""
        return self.parts[j] if 0 <= j < len(self.parts) else 0

    def cells(self) -> Iterator[Tuple[int, int]]:
        """Cells (a, b) with 0 <= a < lambda_{b+1}: a is the column, b the row"""
        for b, row in enumerate(self.parts):
            for a in range(row):
                yield (a, b)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > a) for a in range(self.parts[0])))

    def hook_length(self, b: int, a: int) -> int:
        return (self.parts[b] - a - 1) + (self.conjugate().part(a) - b - 1) + 1

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


EMPTY = Partition()


@dataclass(frozen=True, order=True)
class MultiPartition:
    """An r-tuple of partitions indexed by I = Z/rZ"""
    components: Tuple[Partition, ...]

    def __post_init__(self):
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if not components:
            raise PartitionError("a multipartition needs at least one component")
        for component in components:
            if not isinstance(component, Partition):
                raise PartitionError(f"component is not a Partition: {component!r}")

    @classmethod
    def empty(cls, r: int) -> "MultiPartition":
        return cls(tuple(EMPTY for _ in range(r)))

    @classmethod
    def single(cls, r: int, vertex: int, partition: Partition) -> "MultiPartition":
        """`partition` at `vertex`, empty elsewhere"""
        components = [EMPTY] * r
        components[vertex % r] = partition
        return cls(tuple(components))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def __getitem__(self, i: int) -> Partition:
        return self.components[i % self.r]

    def reversed(self) -> "MultiPartition":
        return MultiPartition(tuple(reversed(self.components)))

    def __str__(self) -> str:
        return ";".join(str(c) for c in self.components)


@dataclass(frozen=True)
class RootElem:
    """Coefficients on the classical simple roots alpha_1, ..., alpha_{r-1}"""
    coeffs: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.coeffs) + 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class DimVector:
    """Variable counts N_i per vertex, indexed cyclically"""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(n) for n in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise PartitionError("a dimension vector needs at least one entry")
        if any(n < 0 for n in entries):
            raise PartitionError(f"dimension vector entries must be nonnegative: {entries}")

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i % self.r]

    def __iter__(self):
        return iter(self.entries)

    def shifted(self, amount: int) -> "DimVector":
        return DimVector(tuple(n + amount for n in self.entries))

    def __str__(self) -> str:
        return ",".join(str(n) for n in self.entries)


def _check_r(r: int):
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise PartitionError(f"r must be a positive integer, got {r!r}")


# Enumeration

@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[Partition, ...]:
    """All partitions of n, largest first in reverse lexicographic order"""
    if n < 0:
        return ()
    found = []
    for multiplicities in _sympy_partitions(n):
        parts = []
        for part, count in sorted(multiplicities.items(), reverse=True):
            if part > 0:
                parts.extend([part] * count)
        found.append(Partition(tuple(parts)))
    return tuple(sorted(found, reverse=True))


def _weak_compositions(n: int, r: int) -> Iterator[Tuple[int, ...]]:
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _weak_compositions(n - first, r - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def multipartitions(n: int, r: int) -> Tuple[MultiPartition, ...]:
    """All r-multipartitions of total size n, in a fixed order"""
    _check_r(r)
    found = []
    for sizes in _weak_compositions(n, r):
        for combo in itertools.product(*(partitions_of(s) for s in sizes)):
            found.append(MultiPartition(combo))
    return tuple(found)


# Abacus

def _bead_positions(lam: Partition, r: int) -> Tuple[int, List[int]]:
    """Charge-0 beta numbers beta_j = lambda_j + L - j with L a multiple of r"""
    beads = -(-lam.length // r) * r
    return beads, [lam.part(j) + beads - 1 - j for j in range(beads)]


def _partition_from_beads(positions: Sequence[int]) -> Partition:
    ordered = sorted(positions, reverse=True)
    beads = len(ordered)
    return Partition.from_parts([b - (beads - 1 - j) for j, b in enumerate(ordered)])


def _runner_partition(levels: Sequence[int]) -> Partition:
    ordered = sorted(levels, reverse=True)
    count = len(ordered)
    return Partition.from_parts([s - (count - 1 - j) for j, s in enumerate(ordered)])


def r_core(lam: Partition, r: int) -> Partition:
    """Slide every bead as far up its runner as it goes"""
    _check_r(r)
    beads, positions = _bead_positions(lam, r)
    counts = [0] * r
    for b in positions:
        counts[b % r] += 1
    core_positions = [rho + r * s for rho in range(r) for s in range(counts[rho])]
    return _partition_from_beads(core_positions)


def r_quotient(lam: Partition, r: int) -> MultiPartition:
    """Component rho is read from the beads on runner rho"""
    _check_r(r)
    beads, positions = _bead_positions(lam, r)
    levels = [[] for _ in range(r)]
    for b in positions:
        levels[b % r].append(b // r)
    return MultiPartition(tuple(_runner_partition(levels[rho]) for rho in range(r)))


def reversed_quotient(lam: Partition, r: int) -> MultiPartition:
    return r_quotient(lam, r).reversed()


def is_core(lam: Partition, r: int) -> bool:
    return r_core(lam, r) == lam


def from_core_and_quotient(core: Partition, quot: MultiPartition, r: int) -> Partition:
    """The unique partition with the given r-core and r-quotient"""
    _check_r(r)
    if quot.r != r:
        raise PartitionError(f"quotient has {quot.r} components, expected {r}")
    if not is_core(core, r):
        logger.error(f"Not an {r}-core: ({core})")
        raise PartitionError(f"({core}) is not an {r}-core")

    beads, positions = _bead_positions(core, r)
    counts = [0] * r
    for b in positions:
        counts[b % r] += 1
    while any(counts[rho] < quot[rho].length for rho in range(r)):
        counts = [c + 1 for c in counts]

    new_positions = []
    for rho in range(r):
        component = quot[rho]
        for j in range(counts[rho]):
            level = component.part(j) + counts[rho] - 1 - j
            new_positions.append(rho + r * level)
    return _partition_from_beads(new_positions)


def rim_hooks(lam: Partition, k: int) -> List[Tuple[Partition, int]]:
    """Every (lambda minus a rim hook of size k, leg length of that hook)"""
    found = []
    if k <= 0:
        return found
    conjugate = lam.conjugate()
    for b, row in enumerate(lam.parts):
        for a in range(row):
            arm = row - a - 1
            leg = conjugate.part(a) - b - 1
            if arm + leg + 1 != k:
                continue
            parts = list(lam.parts)
            for m in range(b, b + leg):
                parts[m] = lam.part(m + 1) - 1
            parts[b + leg] = a
            found.append((Partition.from_parts(parts), leg))
    return found


def core_by_stripping(lam: Partition, r: int) -> Partition:
    """r-core by removing rim hooks from the diagram until none is left"""
    _check_r(r)
    frontier = {lam}
    seen = {lam}
    terminal = set()
    while frontier:
        current = frontier.pop()
        hooks = rim_hooks(current, r)
        if not hooks:
            terminal.add(current)
        smaller = [kappa for kappa, _ in hooks if kappa not in seen]
        seen.update(smaller)
        frontier.update(smaller)
    if len(terminal) != 1:
        raise PartitionError(f"rim-hook stripping of ({lam}) is not confluent: {terminal}")
    return terminal.pop()


def fiber(core: Partition, r: int, n: int) -> Tuple[Partition, ...]:
    """All partitions with r-core `core` and n quotient boxes, largest first"""
    members = [from_core_and_quotient(core, quot, r) for quot in multipartitions(n, r)]
    return tuple(sorted(members, reverse=True))


# Root lattice

def residue_counts(lam: Partition, r: int) -> Tuple[int, ...]:
    """c_j = number of cells (a, b) with (b - a) mod r = j"""
    _check_r(r)
    counts = [0] * r
    for a, b in lam.cells():
        counts[(b - a) % r] += 1
    return tuple(counts)


def kappa(lam: Partition, r: int) -> Tuple[int, ...]:
    """Affine coefficients of sum over cells of alpha_{residue}"""
    return residue_counts(lam, r)


def kappa_cl(lam: Partition, r: int) -> RootElem:
    """kappa followed by alpha_0 -> -(alpha_1 + ... + alpha_{r-1})"""
    counts = residue_counts(lam, r)
    return RootElem(tuple(counts[j] - counts[0] for j in range(1, r)))


def coroot_pairing(i: int, gamma: RootElem, r: int) -> int:
    """<alpha_i^vee, gamma> with the cyclic Cartan matrix"""
    _check_r(r)
    if gamma.r != r:
        raise PartitionError(f"root element has rank {gamma.r - 1}, expected {r - 1}")
    if r == 1:
        return 0
    # affine lift with zero alpha_0 coefficient
    coeffs = (0,) + gamma.coeffs
    i %= r
    if r == 2:
        return 2 * coeffs[i] - 2 * coeffs[1 - i]
    return 2 * coeffs[i] - coeffs[(i - 1) % r] - coeffs[(i + 1) % r]


def is_compatible(N: DimVector, gamma: RootElem, r: int) -> bool:
    """N_i - N_{i-1} = <alpha_i^vee, -gamma> around the cycle; False when N or gamma has the wrong rank"""
    if N.r != r or gamma.r != r:
        return False
    return all(N[i] - N[i - 1] == -coroot_pairing(i, gamma, r) for i in range(r))


def minimal_compatible(gamma: RootElem, r: int, floor: int) -> DimVector:
    """The compatible dimension vector whose smallest entry is `floor`"""
    if floor < 0:
        raise PartitionError(f"floor must be nonnegative, got {floor}")
    offsets = [0]
    for i in range(1, r):
        offsets.append(offsets[-1] - coroot_pairing(i, gamma, r))
    lowest = min(offsets)
    N = DimVector(tuple(o - lowest + floor for o in offsets))
    if not is_compatible(N, gamma, r):
        raise PartitionError(f"no compatible dimension vector for gamma={gamma}")
    return N


# Orders

def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """mu <= lam in dominance order"""
    if mu.size != lam.size:
        return False
    mu_sum = lam_sum = 0
    for j in range(max(mu.length, lam.length)):
        mu_sum += mu.part(j)
        lam_sum += lam.part(j)
        if mu_sum > lam_sum:
            return False
    return True


def wreath_comparable(mu: Partition, lam: Partition, r: int) -> bool:
    if mu.size != lam.size or r_core(mu, r) != r_core(lam, r):
        return False
    return dominance_leq(mu, lam) or dominance_leq(lam, mu)


def wreath_leq(mu: Partition, lam: Partition, r: int) -> bool:
    """Dominance restricted to pairs with equal size and equal r-core"""
    return wreath_comparable(mu, lam, r) and dominance_leq(mu, lam)
