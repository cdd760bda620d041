"""Collects one PASS/FAIL line per acceptance criterion for the summary."""

LINES: list[str] = []


def report(number: int, title: str, passed: bool, detail: str) -> bool:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number} ({title}): {detail}"
    LINES.append(line)
    print(line)
    return passed
