"""Exact-rational model of two-size scheduling instances.

Every size, load and bound in the solver paths is a `fractions.Fraction`;
floating point only appears when reports are rendered for humans. All model
values are frozen dataclasses, so they can be shared freely between
concurrent solver runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

Rational = Fraction


def as_rational(value: object) -> Fraction:
    """Coerce an int, a Fraction, or a string like '3/4' to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Job:
    size: Fraction
    allowed: frozenset[int]


@dataclass(frozen=True)
class Instance:
    """Jobs with at most two distinct sizes, each restricted to a machine subset."""

    machine_count: int
    jobs: tuple[Job, ...]

    @classmethod
    def build(cls, machine_count: int, jobs: Iterable[tuple[object, Iterable[int]]]) -> "Instance":
        built = tuple(Job(as_rational(size), frozenset(machines)) for size, machines in jobs)
        return cls(machine_count, built)

    @property
    def job_count(self) -> int:
        return len(self.jobs)

    def distinct_sizes(self) -> tuple[Fraction, ...]:
        return tuple(sorted({job.size for job in self.jobs}))


@dataclass(frozen=True)
class Schedule:
    """Total assignment of job index to machine index."""

    assignment: tuple[int, ...]

    @classmethod
    def of(cls, assignment: Iterable[int]) -> "Schedule":
        return cls(tuple(assignment))


@dataclass(frozen=True)
class ScaledInstance:
    """Integer view of a normalized instance: all sizes are exactly 1 or k."""

    base: Instance
    k: int
    scale_factor: Fraction

    def size_int(self, job: int) -> int:
        size = self.base.jobs[job].size
        return size.numerator  # sizes are integral by construction

    def is_big(self, job: int) -> bool:
        return self.k > 1 and self.size_int(job) == self.k

    def big_jobs(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.base.job_count) if self.is_big(j))

    def small_jobs(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.base.job_count) if not self.is_big(j))

    def total_size(self) -> int:
        return sum(self.size_int(j) for j in range(self.base.job_count))

    def max_size(self) -> int:
        if not self.base.jobs:
            return 0
        return max(self.size_int(j) for j in range(self.base.job_count))


def validate(instance: Instance) -> str | None:
    """Return None when all instance invariants hold, else name the first violation."""
    if instance.machine_count < 1:
        return "machine count must be positive"
    for idx, job in enumerate(instance.jobs):
        if job.size <= 0:
            return f"job {idx}: nonpositive size"
        if not job.allowed:
            return f"job {idx}: empty allowed set"
        if any(i < 0 or i >= instance.machine_count for i in job.allowed):
            return f"job {idx}: machine index out of range"
    if len(instance.distinct_sizes()) > 2:
        return "more than two size values"
    return None


def require_valid(instance: Instance) -> None:
    violation = validate(instance)
    if violation is not None:
        raise ValueError(f"invalid instance: {violation}")


def machine_loads(instance: Instance, schedule: Schedule) -> list[Fraction]:
    """Per-machine total size under an assignment; rejects disallowed placements."""
    if len(schedule.assignment) != instance.job_count:
        raise ValueError(
            f"schedule covers {len(schedule.assignment)} jobs, instance has {instance.job_count}"
        )
    loads = [Fraction(0)] * instance.machine_count
    for job_idx, machine in enumerate(schedule.assignment):
        job = instance.jobs[job_idx]
        if machine not in job.allowed:
            raise ValueError(f"job {job_idx} assigned to machine {machine} outside its allowed set")
        loads[machine] += job.size
    return loads


def makespan(instance: Instance, schedule: Schedule) -> Fraction:
    """Maximum machine load; machines with no jobs contribute 0."""
    loads = machine_loads(instance, schedule)
    return max(loads, default=Fraction(0))


def normalize(instance: Instance) -> tuple[Instance, Fraction]:
    """Divide all sizes by the big size so sizes become {1/alpha, 1}.

    Single-sized (or empty) instances normalize to all-ones with alpha = 1.
    """
    sizes = instance.distinct_sizes()
    if len(sizes) > 2:
        raise ValueError("invalid instance: more than two size values")
    if not sizes:
        return instance, Fraction(1)
    big = sizes[-1]
    if big <= 0:
        raise ValueError("invalid instance: nonpositive size")
    alpha = big / sizes[0]
    jobs = tuple(Job(job.size / big, job.allowed) for job in instance.jobs)
    return Instance(instance.machine_count, jobs), alpha


def scale_to_integer(instance: Instance) -> ScaledInstance:
    """Clear denominators of a normalized instance, producing sizes {1, k}.

    Requires the small size to be a unit fraction 1/q; other ratios must go
    through the size-rounding reduction first.
    """
    sizes = instance.distinct_sizes()
    if len(sizes) > 2:
        raise ValueError("invalid instance: more than two size values")
    if not sizes:
        return ScaledInstance(instance, 1, Fraction(1))
    if sizes[-1] != 1:
        raise ValueError("instance is not normalized: big size must be 1")
    if len(sizes) == 1:
        return ScaledInstance(instance, 1, Fraction(1))
    small = sizes[0]
    if small.numerator != 1:
        raise ValueError(f"non-integer ratio: small size {small} is not a unit fraction")
    q = small.denominator
    jobs = tuple(Job(job.size * q, job.allowed) for job in instance.jobs)
    return ScaledInstance(Instance(instance.machine_count, jobs), q, Fraction(1, q))


def is_graph_balancing(instance: Instance) -> bool:
    """True when every job is eligible on at most two machines."""
    return all(len(job.allowed) <= 2 for job in instance.jobs)
