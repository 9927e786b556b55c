"""Text state files: a hand-writable, diffable format for pure and mixed states.

Grammar (one entry per line; blank lines and `#` comments ignored):

    header    := "d" INT | "n" INT | "statistics" ("fermionic"|"bosonic")
               | "representation" ("pure"|"mixed") | "label" TEXT
    pure row  := OCC RE IM
    mixed row := OCC OCC RE IM
    OCC       := comma-separated mode indices in canonical (sorted) order

All header keys except `label` are required and must precede the body.
Amplitudes are written as two floats (real, imaginary part).  Pure bodies
list only nonzero amplitudes; unnormalized pure states are normalized with a
warning.  Mixed bodies must describe a Hermitian, PSD, unit-trace matrix
(write both triangles).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, StateFileError
from .fock import FockBasis, Statistics, check_density_matrix, enumerate_basis

_HEADER_KEYS = ("d", "n", "statistics", "representation", "label")


@dataclass
class ParsedState:
    basis: FockBasis
    representation: str
    label: str | None
    vector: np.ndarray | None
    rho: np.ndarray | None
    normalized_on_parse: bool = False

    def density_matrix(self) -> np.ndarray:
        if self.rho is not None:
            return self.rho
        return np.outer(self.vector, self.vector.conj())


def _parse_occupation(token: str, basis: FockBasis, lineno: int, column: int):
    parts = token.split(",")
    try:
        occ = tuple(int(p) for p in parts)
    except ValueError:
        raise StateFileError(f"occupation {token!r} is not a comma-separated "
                             "list of integers", lineno, column) from None
    if len(occ) != basis.n:
        raise StateFileError(f"occupation {token!r} has {len(occ)} modes, "
                             f"expected n={basis.n}", lineno, column)
    if any(not 0 <= m < basis.d for m in occ):
        raise StateFileError(f"occupation {token!r} has a mode outside "
                             f"[0, {basis.d})", lineno, column)
    if occ not in basis:
        kind = ("strictly increasing" if basis.statistics is Statistics.FERMIONIC
                else "non-decreasing")
        raise StateFileError(f"occupation {token!r} is not in canonical "
                             f"{kind} order", lineno, column)
    return occ


def _parse_float(token: str, lineno: int, column: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise StateFileError(f"bad float {token!r}", lineno, column) from None


def _token_columns(raw: str):
    cols = []
    i = 0
    for tok in raw.split():
        i = raw.index(tok, i)
        cols.append(i + 1)
        i += len(tok)
    return cols


def parse_state_file(path) -> ParsedState:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_state_text(fh.read())


def parse_state_text(text: str) -> ParsedState:
    header: dict[str, str] = {}
    header_lines: dict[str, int] = {}
    basis = None
    representation = None
    entries = {}
    body_started = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        columns = _token_columns(raw.split("#", 1)[0])

        if tokens[0] in _HEADER_KEYS:
            if body_started:
                raise StateFileError(f"header key {tokens[0]!r} after body began", lineno, columns[0])
            key = tokens[0]
            if key in header:
                raise StateFileError(f"duplicate header key {key!r}", lineno, columns[0])
            if len(tokens) < 2:
                raise StateFileError(f"header key {key!r} needs a value", lineno, columns[0])
            # labels keep their internal spacing so they round-trip verbatim
            header[key] = line[len(key):].strip() if key == "label" else tokens[1]
            header_lines[key] = lineno
            continue

        # body row
        if not body_started:
            missing = [k for k in ("d", "n", "statistics", "representation") if k not in header]
            if missing:
                raise StateFileError(
                    f"body begins before header keys {missing} are set", lineno, columns[0])
            try:
                d = int(header["d"])
                n = int(header["n"])
            except ValueError:
                raise StateFileError("d and n must be integers",
                                     header_lines.get("d", lineno)) from None
            if n < 1:
                raise StateFileError(f"need n >= 1, got n={n}", header_lines["n"])
            stats = header["statistics"].lower()
            if stats not in ("fermionic", "bosonic"):
                raise StateFileError(f"statistics must be fermionic or bosonic, got {stats!r}",
                                     header_lines["statistics"])
            representation = header["representation"].lower()
            if representation not in ("pure", "mixed"):
                raise StateFileError(f"representation must be pure or mixed, got "
                                     f"{representation!r}", header_lines["representation"])
            try:
                basis = enumerate_basis(d, n, Statistics(stats))
            except InvalidDimension as e:
                raise StateFileError(str(e), header_lines["d"]) from None
            body_started = True

        want = 3 if representation == "pure" else 4
        if len(tokens) != want:
            raise StateFileError(
                f"{representation} row needs {want} fields "
                f"({'occ re im' if want == 3 else 'row-occ col-occ re im'}), got {len(tokens)}",
                lineno, columns[0])
        if representation == "pure":
            occ = _parse_occupation(tokens[0], basis, lineno, columns[0])
            re = _parse_float(tokens[1], lineno, columns[1])
            im = _parse_float(tokens[2], lineno, columns[2])
            key = occ
        else:
            row = _parse_occupation(tokens[0], basis, lineno, columns[0])
            col = _parse_occupation(tokens[1], basis, lineno, columns[1])
            re = _parse_float(tokens[2], lineno, columns[2])
            im = _parse_float(tokens[3], lineno, columns[3])
            key = (row, col)
        if key in entries:
            raise StateFileError(f"duplicate entry for {key}", lineno, columns[0])
        entries[key] = complex(re, im)

    if not body_started:
        raise StateFileError("no state entries found", max(
            list(header_lines.values()) or [1]))

    label = header.get("label")
    if representation == "pure":
        v = np.zeros(basis.size, dtype=complex)
        for occ, amp in entries.items():
            v[basis.index_of(occ)] = amp
        norm = float(np.linalg.norm(v))
        if norm < 1e-12:
            raise StateFileError("pure state has (near-)zero norm")
        normalized = abs(norm - 1.0) > 1e-12
        if normalized:
            warnings.warn(f"pure state had norm {norm!r}; normalized on parse")
            v = v / norm
        return ParsedState(basis, "pure", label, v, None, normalized)

    rho = np.zeros((basis.size, basis.size), dtype=complex)
    for (row, col), val in entries.items():
        rho[basis.index_of(row), basis.index_of(col)] = val
    check_density_matrix(rho)  # raises InvalidState on violation
    return ParsedState(basis, "mixed", label, None, rho, False)


def _fmt(x: float) -> str:
    return repr(float(x))


def write_state_text(basis: FockBasis, vector: np.ndarray | None = None,
                     rho: np.ndarray | None = None, label: str | None = None) -> str:
    """Serialize a state losslessly (floats via repr, which round-trips)."""
    if (vector is None) == (rho is None):
        raise ValueError("provide exactly one of vector or rho")
    lines = [f"d {basis.d}", f"n {basis.n}", f"statistics {basis.statistics.value}"]
    lines.append(f"representation {'pure' if rho is None else 'mixed'}")
    if label is not None:
        lines.append(f"label {label}")
    if vector is not None:
        for i, occ in enumerate(basis.states):
            amp = complex(vector[i])
            if amp != 0:
                lines.append(f"{','.join(map(str, occ))} {_fmt(amp.real)} {_fmt(amp.imag)}")
    else:
        for i, row in enumerate(basis.states):
            for j, col in enumerate(basis.states):
                val = complex(rho[i, j])
                if val != 0:
                    lines.append(f"{','.join(map(str, row))} {','.join(map(str, col))} "
                                 f"{_fmt(val.real)} {_fmt(val.imag)}")
    return "\n".join(lines) + "\n"


def write_state_file(path, basis: FockBasis, vector: np.ndarray | None = None,
                     rho: np.ndarray | None = None, label: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_state_text(basis, vector, rho, label))
