"""Named pass/fail records produced by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail and not self.passed else "")


def check_equal(name: str, got, expected, where: str = "") -> Check:
    ok = got == expected
    detail = f"{where + ': ' if where else ''}got {got}, expected {expected}"
    return Check(name, ok, "" if ok else detail)
