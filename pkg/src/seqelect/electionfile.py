"""Reading and writing election files.

The native format is line oriented UTF-8 text; ``#`` starts a comment::

    version 1
    mode ballots
    candidates A B C X Y Z
    approve 20 | A B C          # weight | approved candidates
    voter 1 | 1 1/2 0 0 0 0     # weight | one score per candidate
    phantom | 1 0 0 0 0 0       # phantom voter column (weight optional, default 1)
    ineligible A                # candidate that can never be elected

    version 1
    mode partylist
    seats 7
    party P1 53

A CSV convenience form holds one row per candidate: the name, then one score
per voter.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .numerics import BallotError, BallotMatrix
from .partylist import ApportionmentError, PartyTally
from .trace import format_value

FORMAT_VERSION = 1


class ElectionFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, path=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{where}: {message}" if where else f"{prefix}{message}")
        self.line, self.column = line, column


@dataclass(frozen=True)
class ElectionFile:
    mode: str  # "ballots" or "partylist"
    matrix: BallotMatrix | None = None
    tally: PartyTally | None = None
    version: int = FORMAT_VERSION


def _score(token: str, line: int, col: int) -> Fraction:
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ElectionFileError(f"cannot read score {token!r}", line, col) from None
    if not 0 <= value <= 1:
        raise ElectionFileError(f"score {token} lies outside [0, 1]", line, col)
    return value


def _tokens(text: str):
    """Yield ``(token, column)`` pairs, 1-based columns."""
    col = 0
    for part in text.split():
        col = text.index(part, col)
        yield part, col + 1
        col += len(part)


def _positive_int(token: str, what: str, line: int, col: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ElectionFileError(f"{what} must be an integer, got {token!r}", line, col) from None
    if value <= 0:
        raise ElectionFileError(f"{what} must be positive, got {value}", line, col)
    return value


def parse_text(text: str, path=None) -> ElectionFile:
    mode = None
    version = None
    candidates: list[str] = []
    cols: list[list[Fraction]] = []
    weights: list[int] = []
    phantoms: list[bool] = []
    ineligible: set[str] = set()
    seats = None
    parties: list[tuple[str, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = list(_tokens(body))
        if not toks:
            continue
        key, kcol = toks[0]
        args = toks[1:]
        if key == "version":
            if len(args) != 1 or args[0][0] != str(FORMAT_VERSION):
                raise ElectionFileError(f"unsupported format version (expected {FORMAT_VERSION})", lineno, kcol)
            version = FORMAT_VERSION
        elif key == "mode":
            if len(args) != 1 or args[0][0] not in ("ballots", "partylist"):
                raise ElectionFileError("mode must be 'ballots' or 'partylist'", lineno, kcol)
            mode = args[0][0]
        elif mode is None:
            raise ElectionFileError(f"'{key}' before the mode line", lineno, kcol)
        elif mode == "partylist" and key == "seats":
            if len(args) != 1:
                raise ElectionFileError("seats takes one integer", lineno, kcol)
            try:
                seats = int(args[0][0])
            except ValueError:
                raise ElectionFileError(f"seats must be an integer, got {args[0][0]!r}", lineno, args[0][1]) from None
            if seats < 0:
                raise ElectionFileError("seats must be non-negative", lineno, args[0][1])
        elif mode == "partylist" and key == "party":
            if len(args) != 2:
                raise ElectionFileError("expected 'party NAME VOTES'", lineno, kcol)
            (name, ncol), (votes, vcol) = args
            if any(name == p for p, _ in parties):
                raise ElectionFileError(f"duplicate party name {name!r}", lineno, ncol)
            try:
                v = int(votes)
            except ValueError:
                raise ElectionFileError(f"votes must be an integer, got {votes!r}", lineno, vcol) from None
            if v < 0:
                raise ElectionFileError("votes must be non-negative", lineno, vcol)
            parties.append((name, v))
        elif mode == "ballots" and key == "candidates":
            if candidates:
                raise ElectionFileError("candidates listed twice", lineno, kcol)
            for name, ncol in args:
                if name in candidates:
                    raise ElectionFileError(f"duplicate candidate name {name!r}", lineno, ncol)
                candidates.append(name)
            if not candidates:
                raise ElectionFileError("no candidates listed", lineno, kcol)
        elif mode == "ballots" and key in ("voter", "approve", "phantom"):
            if not candidates:
                raise ElectionFileError("voters must follow the candidates line", lineno, kcol)
            bar = [i for i, (t, _) in enumerate(args) if t == "|"]
            if len(bar) != 1:
                raise ElectionFileError("expected exactly one '|' separating weight and ballot", lineno, kcol)
            head, ballot = args[:bar[0]], args[bar[0] + 1:]
            if key == "phantom" and not head:
                weight = 1
            else:
                if len(head) != 1:
                    raise ElectionFileError("expected one weight before '|'", lineno, kcol)
                weight = _positive_int(head[0][0], "weight", lineno, head[0][1])
            if key == "approve":
                col = [Fraction(0)] * len(candidates)
                for name, ncol in ballot:
                    if name not in candidates:
                        raise ElectionFileError(f"unknown candidate {name!r}", lineno, ncol)
                    col[candidates.index(name)] = Fraction(1)
            else:
                if len(ballot) != len(candidates):
                    raise ElectionFileError(
                        f"expected {len(candidates)} scores, got {len(ballot)}", lineno, kcol)
                col = [_score(t, lineno, c) for t, c in ballot]
            cols.append(col)
            weights.append(weight)
            phantoms.append(key == "phantom")
        elif mode == "ballots" and key == "ineligible":
            for name, ncol in args:
                if name not in candidates:
                    raise ElectionFileError(f"unknown candidate {name!r}", lineno, ncol)
                ineligible.add(name)
        else:
            raise ElectionFileError(f"unknown directive {key!r} in {mode} mode", lineno, kcol)

    if version is None:
        raise ElectionFileError("missing 'version' line", path=path)
    if mode is None:
        raise ElectionFileError("missing 'mode' line", path=path)
    if mode == "partylist":
        if seats is None:
            raise ElectionFileError("missing 'seats' line", path=path)
        try:
            return ElectionFile(mode, tally=PartyTally(tuple(parties), seats))
        except ApportionmentError as exc:
            raise ElectionFileError(str(exc), path=path) from None
    if not cols:
        raise ElectionFileError("no voters", path=path)
    rows = [[col[i] for col in cols] for i in range(len(candidates))]
    try:
        matrix = BallotMatrix(rows, candidates, weights, [c not in ineligible for c in candidates], phantoms)
    except BallotError as exc:
        raise ElectionFileError(str(exc), path=path) from None
    return ElectionFile(mode, matrix=matrix)


def parse_csv(text: str, path=None) -> ElectionFile:
    names, rows = [], []
    for lineno, rec in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not rec or all(not c.strip() for c in rec):
            continue
        name = rec[0].strip()
        if name in names:
            raise ElectionFileError(f"duplicate candidate name {name!r}", lineno, 1)
        names.append(name)
        rows.append([_score(c.strip(), lineno, k + 2) for k, c in enumerate(rec[1:])])
    if not rows:
        raise ElectionFileError("empty CSV", path=path)
    try:
        return ElectionFile("ballots", matrix=BallotMatrix(rows, names))
    except BallotError as exc:
        raise ElectionFileError(str(exc), path=path) from None


def parse_election(path) -> ElectionFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ElectionFileError(f"cannot read file: {exc.strerror}", path=path) from None
    except UnicodeDecodeError:
        raise ElectionFileError("file is not valid UTF-8", path=path) from None
    try:
        if path.suffix.lower() == ".csv":
            return parse_csv(text)
        return parse_text(text)
    except ElectionFileError as exc:
        if exc.line is not None:
            raise ElectionFileError(str(exc), path=path) from None
        raise


def serialize(election: ElectionFile) -> str:
    out = [f"version {election.version}", f"mode {election.mode}"]
    if election.mode == "partylist":
        out.append(f"seats {election.tally.seats}")
        out += [f"party {name} {votes}" for name, votes in election.tally.parties]
        return "\n".join(out) + "\n"
    m = election.matrix
    out.append("candidates " + " ".join(m.candidate_names))
    for j in range(m.n):
        scores = " ".join(format_value(row[j]) for row in m.rows)
        if m.phantom_voters[j]:
            w = m.voter_weights[j]
            out.append(f"phantom | {scores}" if w == 1 else f"phantom {w} | {scores}")
        else:
            out.append(f"voter {m.voter_weights[j]} | {scores}")
    blocked = [c for c, e in zip(m.candidate_names, m.eligible) if not e]
    if blocked:
        out.append("ineligible " + " ".join(blocked))
    return "\n".join(out) + "\n"
