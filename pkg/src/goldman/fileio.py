"""Line-oriented text schemas for representations, cocycles and matrices.

Floats are written with 17 significant digits, which round-trips IEEE
doubles exactly, so write-then-read is lossless bit for bit.  A
representation file carries a content hash; cocycle files reference that
hash so Gram computations cannot silently mix bases.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .cocycles import Cocycle
from .errors import InputError
from .reps import Representation
from .words import Presentation

FORMAT_VERSION = "1"


def format_float(x: float) -> str:
    return f"{x:.17g}"


def _matrix_lines(m: np.ndarray):
    for row in np.asarray(m):
        yield " ".join(f"{format_float(z.real)} {format_float(z.imag)}" for z in row)


def _parse_matrix(lines, n: int) -> np.ndarray:
    rows = []
    for _ in range(n):
        try:
            raw = next(lines)
        except StopIteration:
            raise InputError("unexpected end of file inside a matrix block")
        parts = raw.split()
        if len(parts) != 2 * n:
            raise InputError(f"expected {2 * n} numbers in a matrix row, got {len(parts)}")
        try:
            values = [float(p) for p in parts]
        except ValueError as exc:
            raise InputError(f"bad float in matrix row: {exc}")
        rows.append([complex(values[2 * i], values[2 * i + 1]) for i in range(n)])
    return np.array(rows, dtype=complex)


def _representation_payload(rep: Representation) -> str:
    lines = [
        f"format: representation {FORMAT_VERSION}",
        f"genus: {rep.genus}",
        f"rank: {rep.rank}",
        f"flavor: {rep.flavor}",
        f"seed: {'none' if rep.seed is None else rep.seed}",
    ]
    for i, m in enumerate(rep.images):
        lines.append(f"generator: {rep.presentation.generator_name(i)}")
        lines.extend(_matrix_lines(m))
    return "\n".join(lines) + "\n"


def representation_fingerprint(rep: Representation) -> str:
    return hashlib.sha256(_representation_payload(rep).encode()).hexdigest()


def write_representation(path, rep: Representation) -> str:
    """Write a representation file; returns its content hash."""
    payload = _representation_payload(rep)
    digest = hashlib.sha256(payload.encode()).hexdigest()
    head, _, tail = payload.partition("\n")
    Path(path).write_text(f"{head}\nhash: {digest}\n{tail}")
    return digest


def _read_header(lines, expected_kind: str) -> dict:
    try:
        first = next(lines)
    except StopIteration:
        raise InputError("empty file")
    if first != f"format: {expected_kind} {FORMAT_VERSION}":
        raise InputError(f"not a {expected_kind} file (header {first!r})")
    header = {"format": f"{expected_kind} {FORMAT_VERSION}"}
    for line in lines:
        key, sep, value = line.partition(": ")
        if not sep:
            raise InputError(f"malformed header line {line!r}")
        if key == "generator":
            header.setdefault("_first_generator", value)
            break
        header[key] = value
    return header


def _header_int(header: dict, key: str) -> int:
    try:
        return int(header[key])
    except KeyError:
        raise InputError(f"missing header field {key!r}")
    except ValueError:
        raise InputError(f"header field {key!r} is not an integer")


def read_representation(path) -> Representation:
    text = Path(path).read_text()
    lines = iter(text.splitlines())
    header = _read_header(lines, "representation")
    genus = _header_int(header, "genus")
    rank = _header_int(header, "rank")
    flavor = header.get("flavor")
    seed_text = header.get("seed", "none")
    seed = None if seed_text == "none" else int(seed_text)
    stored_hash = header.get("hash")
    if stored_hash is None:
        raise InputError("representation file is missing its hash line")

    pres = Presentation(genus)
    images = []
    expected = [pres.generator_name(i) for i in range(pres.generator_count)]
    name = header.get("_first_generator")
    for position, want in enumerate(expected):
        if position > 0:
            try:
                line = next(lines)
            except StopIteration:
                raise InputError("missing generator blocks")
            key, sep, name = line.partition(": ")
            if key != "generator" or not sep:
                raise InputError(f"expected a generator line, got {line!r}")
        if name != want:
            raise InputError(f"generator blocks out of order: expected {want}, got {name}")
        images.append(_parse_matrix(lines, rank))
    rep = Representation(pres, rank, tuple(images), flavor, seed=seed)
    if rep.fingerprint != stored_hash:
        raise InputError("representation file hash does not match its contents")
    return rep


def write_cocycle(path, chi: Cocycle) -> None:
    rep = chi.base
    lines = [
        f"format: cocycle {FORMAT_VERSION}",
        f"genus: {rep.genus}",
        f"rank: {rep.rank}",
        f"base-hash: {rep.fingerprint}",
    ]
    for i, m in enumerate(chi.values):
        lines.append(f"generator: {rep.presentation.generator_name(i)}")
        lines.extend(_matrix_lines(m))
    Path(path).write_text("\n".join(lines) + "\n")


def read_cocycle(path, base: Representation) -> Cocycle:
    text = Path(path).read_text()
    lines = iter(text.splitlines())
    header = _read_header(lines, "cocycle")
    genus = _header_int(header, "genus")
    rank = _header_int(header, "rank")
    base_hash = header.get("base-hash")
    if genus != base.genus or rank != base.rank:
        raise InputError("cocycle file shape does not match the base representation")
    if base_hash != base.fingerprint:
        raise InputError("cocycle base hash does not match the provided representation")
    pres = base.presentation
    values = []
    name = header.get("_first_generator")
    for position in range(pres.generator_count):
        want = pres.generator_name(position)
        if position > 0:
            try:
                line = next(lines)
            except StopIteration:
                raise InputError("missing generator blocks")
            key, sep, name = line.partition(": ")
            if key != "generator" or not sep:
                raise InputError(f"expected a generator line, got {line!r}")
        if name != want:
            raise InputError(f"generator blocks out of order: expected {want}, got {name}")
        values.append(_parse_matrix(lines, rank))
    return Cocycle(base, tuple(values))


def write_matrix(path, matrix: np.ndarray, header_lines=()) -> None:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    lines = [f"format: matrix {FORMAT_VERSION}",
             f"rows: {matrix.shape[0]}",
             f"cols: {matrix.shape[1]}"]
    lines.extend(header_lines)
    lines.append("data:")
    lines.extend(_matrix_lines(matrix))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path) -> np.ndarray:
    text = Path(path).read_text()
    lines = iter(text.splitlines())
    try:
        first = next(lines)
    except StopIteration:
        raise InputError("empty file")
    if first != f"format: matrix {FORMAT_VERSION}":
        raise InputError(f"not a matrix file (header {first!r})")
    rows = cols = None
    for line in lines:
        if line == "data:":
            break
        key, sep, value = line.partition(": ")
        if key == "rows":
            rows = int(value)
        elif key == "cols":
            cols = int(value)
    if rows is None or cols is None:
        raise InputError("matrix file is missing its shape")
    out = []
    for _ in range(rows):
        try:
            raw = next(lines)
        except StopIteration:
            raise InputError("matrix file ends before all rows were read")
        parts = [float(p) for p in raw.split()]
        if len(parts) != 2 * cols:
            raise InputError("matrix row has the wrong number of entries")
        out.append([complex(parts[2 * i], parts[2 * i + 1]) for i in range(cols)])
    return np.array(out, dtype=complex)
