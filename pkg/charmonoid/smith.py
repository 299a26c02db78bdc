from typing import List, Sequence

IntMatrix = List[List[int]]


def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


class SmithForm:
    """
    Smith normal form of an integer matrix R (m x n) together with unimodular
    transforms: U R V = D, D diagonal with d_1 | d_2 | ... and d_i >= 0.
    """
    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        self.m = len(rows)
        self.n = ncols
        self.D: IntMatrix = [[int(x) for x in row] for row in rows]
        self.U: IntMatrix = _identity(self.m)
        self.V: IntMatrix = _identity(self.n)
        self._reduce()

    # -- elementary operations, mirrored into U (rows) and V (columns) ----------

    def _swap_rows(self, a: int, b: int):
        if a != b:
            self.D[a], self.D[b] = self.D[b], self.D[a]
            self.U[a], self.U[b] = self.U[b], self.U[a]

    def _swap_cols(self, a: int, b: int):
        if a != b:
            for M in (self.D, self.V):
                for row in M:
                    row[a], row[b] = row[b], row[a]

    def _add_row(self, target: int, source: int, factor: int):
        for M in (self.D, self.U):
            M[target] = [x + factor * y for x, y in zip(M[target], M[source])]

    def _add_col(self, target: int, source: int, factor: int):
        for M in (self.D, self.V):
            for row in M:
                row[target] += factor * row[source]

    def _negate_row(self, r: int):
        self.D[r] = [-x for x in self.D[r]]
        self.U[r] = [-x for x in self.U[r]]

    def _smallest_entry(self, t: int):
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                a = abs(self.D[i][j])
                if a and (best is None or a < best[0]):
                    best = (a, i, j)
        return best

    def _reduce(self):
        D = self.D
        for t in range(min(self.m, self.n)):
            while True:
                best = self._smallest_entry(t)
                if best is None:
                    return
                _, i, j = best
                self._swap_rows(t, i)
                self._swap_cols(t, j)
                pivot = D[t][t]
                clean = True
                for i in range(t + 1, self.m):
                    if D[i][t]:
                        self._add_row(i, t, -(D[i][t] // pivot))
                        clean = clean and D[i][t] == 0
                for j in range(t + 1, self.n):
                    if D[t][j]:
                        self._add_col(j, t, -(D[t][j] // pivot))
                        clean = clean and D[t][j] == 0
                if not clean:
                    continue
                offender = next(((i, j) for i in range(t + 1, self.m) for j in range(t + 1, self.n)
                                 if D[i][j] % pivot), None)
                if offender is None:
                    break
                self._add_row(t, offender[0], 1)
            if D[t][t] < 0:
                self._negate_row(t)

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(self.m, self.n))]

    def invariants(self) -> List[int]:
        """Cyclic factor orders of Z^n / rowspace(R), trivial factors included (0 = infinite)."""
        diag = self.diagonal
        return diag + [0] * (self.n - len(diag))


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> SmithForm:
    return SmithForm(rows, ncols)
