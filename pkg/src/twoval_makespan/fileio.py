"""Line-based instance files.

    # optional comments
    machines <m>
    jobs <n>
    job <id> <num>/<den> <machine indices...>

Sizes are exact rationals, `/1` optional for integers; decimals are rejected.
Job ids must be 0..n-1 in order. Printing then parsing is the identity.
"""

from __future__ import annotations

from fractions import Fraction

from .model import Instance


class FileFormatError(ValueError):
    pass


def parse_fraction(text: str) -> Fraction:
    """Parse `num` or `num/den`; anything else (decimals included) is rejected."""
    parts = text.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            return Fraction(int(parts[0]), int(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"bad rational {text!r}: {exc}") from None
    raise FileFormatError(f"bad rational {text!r}")


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_instance(text: str) -> Instance:
    lines = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(lines) < 2:
        raise FileFormatError("expected 'machines <m>' and 'jobs <n>' header lines")

    def header(line: str, keyword: str) -> int:
        parts = line.split()
        if len(parts) != 2 or parts[0] != keyword:
            raise FileFormatError(f"expected '{keyword} <count>', got {line!r}")
        try:
            return int(parts[1])
        except ValueError:
            raise FileFormatError(f"bad count in {line!r}") from None

    machine_count = header(lines[0], "machines")
    job_count = header(lines[1], "jobs")
    body = lines[2:]
    if len(body) != job_count:
        raise FileFormatError(f"expected {job_count} job lines, found {len(body)}")

    jobs = []
    for position, line in enumerate(body):
        parts = line.split()
        if len(parts) < 4 or parts[0] != "job":
            raise FileFormatError(f"expected 'job <id> <size> <machines...>', got {line!r}")
        try:
            job_id = int(parts[1])
        except ValueError:
            raise FileFormatError(f"bad job id in {line!r}") from None
        if job_id != position:
            raise FileFormatError(f"job ids must be 0..n-1 in order; got {job_id} at line {position}")
        size = parse_fraction(parts[2])
        try:
            machines = [int(token) for token in parts[3:]]
        except ValueError:
            raise FileFormatError(f"bad machine index in {line!r}") from None
        jobs.append((size, machines))
    return Instance.build(machine_count, jobs)


def format_instance(instance: Instance) -> str:
    lines = [f"machines {instance.machine_count}", f"jobs {instance.job_count}"]
    for idx, job in enumerate(instance.jobs):
        machines = " ".join(str(i) for i in sorted(job.allowed))
        lines.append(f"job {idx} {format_fraction(job.size)} {machines}")
    return "\n".join(lines) + "\n"
