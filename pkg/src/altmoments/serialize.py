"""JSON and CSV wire formats.

Rationals travel as strings in canonical lowest terms ("3/4", "0", "-2");
sequences as JSON arrays of such strings; measures as {"atoms": [{"x", "w"}]};
Laplace exponent data as {"drift", "nutilde": {...}} (or "nu" for input in
the mix scale).  CSV emission renders decimals to 12 significant digits;
exactness lives in the JSON forms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Optional

from .compstruct import ChiSquareReport, CompositionDistribution, QRow, RegenerationReport
from .errors import InvalidInputError
from .momentrep import DiscreteMeasure
from .seqcalc import DepthCertificate, FiniteSequence, Witness, to_fraction
from .subord import LaplaceExponentData, from_mix_scale


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


def decimal12(x) -> str:
    """Decimal rendering to 12 significant digits (for CSV/plots)."""
    return f"{float(x):.12g}"


# ---------------------------------------------------------------- sequences

def sequence_to_obj(seq: FiniteSequence) -> list[str]:
    return [fraction_str(v) for v in seq]


def sequence_from_obj(obj) -> FiniteSequence:
    if not isinstance(obj, list):
        raise InvalidInputError("a sequence file must hold a JSON array")
    return FiniteSequence([to_fraction(v) for v in obj])


# ----------------------------------------------------------------- measures

def measure_to_obj(measure: DiscreteMeasure) -> dict:
    return {
        "atoms": [
            {"x": fraction_str(x), "w": fraction_str(w)} for x, w in measure
        ]
    }


def measure_from_obj(obj) -> DiscreteMeasure:
    if not isinstance(obj, dict) or "atoms" not in obj:
        raise InvalidInputError('a measure needs an "atoms" array')
    atoms = []
    for entry in obj["atoms"]:
        try:
            atoms.append((to_fraction(entry["x"]), to_fraction(entry["w"])))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"bad atom entry {entry!r}") from exc
    return DiscreteMeasure(atoms)


# -------------------------------------------------------- laplace exponents

def data_to_obj(data: LaplaceExponentData) -> dict:
    return {
        "drift": fraction_str(data.drift),
        "nutilde": measure_to_obj(data.jump_measure),
    }


def data_from_obj(obj, scale: str = "nutilde") -> LaplaceExponentData:
    """Read {"drift", "nutilde"|"nu"}.  scale selects which key is expected;
    mix-scale input ("nu") is converted to the canonical jump scale.
    """
    if not isinstance(obj, dict):
        raise InvalidInputError("exponent data must be a JSON object")
    if scale not in ("nutilde", "nu"):
        raise InvalidInputError(f"unknown scale {scale!r}")
    drift = to_fraction(obj.get("drift", "0"))
    if scale not in obj:
        raise InvalidInputError(f'expected key "{scale}" in exponent data')
    measure = measure_from_obj(obj[scale])
    if scale == "nu":
        measure = from_mix_scale(measure)
    return LaplaceExponentData(drift=drift, jump_measure=measure)


# -------------------------------------------------------------- certificates

def witness_to_obj(w: Witness) -> dict:
    return {"j": w.j, "n": w.n, "value": fraction_str(w.value)}


def certificate_to_obj(cert: DepthCertificate, **extra) -> dict:
    obj = {"verdict": cert.verdict, "depth": cert.depth}
    if cert.witness is not None:
        obj["witness"] = witness_to_obj(cert.witness)
    obj.update(extra)
    return obj


# -------------------------------------------------------------- compositions

def qmatrix_to_obj(rows: Iterable[QRow]) -> dict:
    rows = list(rows)
    return {
        "n": max((r.n for r in rows), default=0),
        "rows": [[fraction_str(q) for q in r.entries] for r in rows],
    }


def pmf_to_obj(dist: CompositionDistribution) -> dict:
    return {
        "n": dist.n,
        "pmf": [
            {"parts": list(parts), "p": fraction_str(p)}
            for parts, p in sorted(dist.probs.items())
        ],
    }


def pmf_from_obj(obj) -> CompositionDistribution:
    if not isinstance(obj, dict) or "n" not in obj or "pmf" not in obj:
        raise InvalidInputError('a pmf needs "n" and "pmf"')
    probs = {
        tuple(entry["parts"]): to_fraction(entry["p"]) for entry in obj["pmf"]
    }
    return CompositionDistribution(n=int(obj["n"]), probs=probs)


def samples_to_obj(samples: list[tuple[int, ...]], seed: int, method: str, n: int) -> dict:
    return {
        "seed": seed,
        "method": method,
        "n": n,
        "count": len(samples),
        "samples": [list(s) for s in samples],
    }


def samples_to_csv(samples: list[tuple[int, ...]], seed: int, method: str) -> str:
    lines = [f"# seed={seed} method={method}"]
    lines.extend(",".join(str(p) for p in parts) for parts in samples)
    return "\n".join(lines) + "\n"


def chisquare_to_obj(report: ChiSquareReport) -> dict:
    return {
        "statistic": report.statistic,
        "dof": report.dof,
        "pvalue": report.pvalue,
    }


def regeneration_to_obj(report: RegenerationReport) -> dict:
    obj = {"n": report.n, "passed": report.passed}
    if report.violation is not None:
        m, rest, conditional, expected = report.violation
        obj["violation"] = {
            "first_part": m,
            "rest": list(rest),
            "conditional": fraction_str(conditional),
            "expected": fraction_str(expected),
        }
    return obj


# ------------------------------------------------------------ reconstruction

def points_to_obj(points) -> dict:
    return {
        "points": [
            {"x": fraction_str(x), "F": fraction_str(f)} for x, f in points
        ]
    }


def points_to_csv(points) -> str:
    lines = ["x,F"]
    lines.extend(f"{decimal12(x)},{decimal12(f)}" for x, f in points)
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ file I/O

def parse_json(text: str, origin: str = "<input>"):
    """Parse JSON text; a syntax error is reported with line/column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(
            f"{origin}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def load_json(path: str):
    """Parse a JSON file; a syntax error is reported with line/column."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_json(text, origin=path), text


def locate_token(text: str, token: str) -> Optional[tuple[int, int]]:
    """(line, column) of the first occurrence of token in text, 1-based."""
    pos = text.find(token)
    if pos < 0:
        return None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
