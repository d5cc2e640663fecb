"""Sparse integer matrices and chain complexes, plus their text format.

Text format (one record per line)::

    chains <max_dim> <finite|truncated>
    degree <d> <basis size>          # one line per degree 0..max_dim
    boundary <d> <rows> <cols> <nnz> # one block per degree 1..max_dim
    <row> <col> <value>              # nnz triplets, sorted by (row, col)
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInput


@dataclass
class IntMatrix:
    """Integer matrix in coordinate form; zero entries are never stored."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidInput(f"entry {(r, c)} outside {self.rows}x{self.cols}")
            if v == 0:
                del self.entries[r, c]

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        ent = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, ent)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self):
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def triplets(self):
        return sorted((r, c, v) for (r, c), v in self.entries.items())

    def row_dicts(self):
        rows = {}
        for (r, c), v in self.entries.items():
            rows.setdefault(r, {})[c] = v
        return rows

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInput("shape mismatch")
        right = other.row_dicts()
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in right.get(k, {}).items():
                out[r, c] = out.get((r, c), 0) + v * w
        return IntMatrix(self.rows, other.cols, {k: v for k, v in out.items() if v})

    @property
    def nnz(self):
        return len(self.entries)


@dataclass
class ChainComplex:
    """Free chain complex truncated at ``max_dim``.

    ``basis[d]`` lists the labels of degree-d generators; ``boundary[d]``
    (d >= 1) maps degree d to degree d-1.  ``finite`` says whether the
    complex genuinely vanishes above ``max_dim``; truncated complexes only
    have valid homology in degrees below ``max_dim``.
    """

    max_dim: int
    basis: list
    boundary: dict
    finite: bool = False
    name: str = ""

    def rank(self, d):
        return len(self.basis[d]) if 0 <= d <= self.max_dim else 0

    def ranks(self):
        return [len(b) for b in self.basis]

    @property
    def valid_degrees(self):
        top = self.max_dim if self.finite else self.max_dim - 1
        return range(0, top + 1)

    def boundary_matrix(self, d) -> IntMatrix:
        if 1 <= d <= self.max_dim:
            return self.boundary[d]
        return IntMatrix(self.rank(d - 1), self.rank(d))

    def check_dd_zero(self) -> bool:
        for d in range(2, self.max_dim + 1):
            if self.boundary[d - 1].matmul(self.boundary[d]).nnz:
                return False
        return True


def dump_chain_complex(C: ChainComplex) -> str:
    lines = [f"chains {C.max_dim} {'finite' if C.finite else 'truncated'}"]
    for d in range(C.max_dim + 1):
        lines.append(f"degree {d} {C.rank(d)}")
    for d in range(1, C.max_dim + 1):
        M = C.boundary[d]
        lines.append(f"boundary {d} {M.rows} {M.cols} {M.nnz}")
        lines.extend(f"{r} {c} {v}" for r, c, v in M.triplets())
    return "\n".join(lines) + "\n"


def load_chain_complex(text: str) -> ChainComplex:
    """Parse the text format; basis labels become plain indices."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        tag, max_dim, kind = lines[0]
        if tag != "chains" or kind not in ("finite", "truncated"):
            raise ValueError
        max_dim = int(max_dim)
        pos = 1
        sizes = []
        for d in range(max_dim + 1):
            tag, dd, n = lines[pos]
            if tag != "degree" or int(dd) != d:
                raise ValueError
            sizes.append(int(n))
            pos += 1
        boundary = {}
        for d in range(1, max_dim + 1):
            tag, dd, nr, nc, nnz = lines[pos]
            if tag != "boundary" or int(dd) != d:
                raise ValueError
            pos += 1
            ent = {}
            for r, c, v in lines[pos:pos + int(nnz)]:
                ent[int(r), int(c)] = int(v)
            pos += int(nnz)
            boundary[d] = IntMatrix(int(nr), int(nc), ent)
    except (ValueError, IndexError):
        raise InvalidInput("malformed chain complex text") from None
    basis = [list(range(n)) for n in sizes]
    return ChainComplex(max_dim, basis, boundary, finite=(kind == "finite"))
