"""Switched linear systems and their mergence with a logical switching layer.

A switched linear system (SLS) is a family of modes (A_i, B_i, C_i);
at each step one mode, selected by the switching signal sigma, drives
x(t+1) = A_sigma x(t) + B_sigma u(t). When sigma is emitted by a
logical control network, the pair can be merged into a single hybrid
system on z = theta_vec (x) x whose dynamics are carried by two large
matrices G (nN x nMN) and H (nN x mMN).

G and H are constructed by two independent routes that are required to
agree: the closed-form semi-tensor-product formula, and direct block
placement (for input i and logical state beta, the single nonzero
block of G_i's block column beta sits at the L-target row and equals
the A matrix of the mode R selects there). The block form is the
authoritative carrier for analysis; the flat matrices validate the
formula. A dual mergence with transposed mode matrices (A_i^T, C_i^T)
supports the observability-side checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    BooleanMatrix,
    DimensionError,
    Matrix,
    _is_zero,
    hstack,
    kronecker,
    power_reducing_matrix,
    stp,
)
from .lcn import LogicalNetwork, encode_pair, step


class MergeVerificationError(AssertionError):
    """The two mergence routes disagreed; the build is unsound."""


@dataclass(frozen=True)
class SwitchedLinearSystem:
    """Mode family (A_i, B_i, C_i), i in 1..q, on fixed dimensions n, m, p."""

    modes: tuple[tuple[Matrix, Matrix, Matrix], ...]

    def __init__(self, modes):
        mds = tuple((a, b, c) for a, b, c in modes)
        if not mds:
            raise DimensionError("need at least one mode")
        a0, b0, c0 = mds[0]
        n = a0.rows
        for i, (a, b, c) in enumerate(mds, start=1):
            if a.shape != (n, n):
                raise DimensionError(f"mode {i}: A is {a.shape}, expected {n}x{n}")
            if b.rows != n:
                raise DimensionError(f"mode {i}: B has {b.rows} rows, expected {n}")
            if b.cols != b0.cols:
                raise DimensionError(f"mode {i}: B has {b.cols} columns, expected {b0.cols}")
            if c.cols != n:
                raise DimensionError(f"mode {i}: C has {c.cols} columns, expected {n}")
            if c.rows != c0.rows:
                raise DimensionError(f"mode {i}: C has {c.rows} rows, expected {c0.rows}")
        object.__setattr__(self, "modes", mds)

    @property
    def n(self) -> int:
        return self.modes[0][0].rows

    @property
    def m(self) -> int:
        return self.modes[0][1].cols

    @property
    def p(self) -> int:
        return self.modes[0][2].rows

    @property
    def q(self) -> int:
        return len(self.modes)

    @property
    def mode_flag(self) -> str:
        return self.modes[0][0].mode

    def a(self, sigma: int) -> Matrix:
        return self.modes[sigma - 1][0]

    def b(self, sigma: int) -> Matrix:
        return self.modes[sigma - 1][1]

    def c(self, sigma: int) -> Matrix:
        return self.modes[sigma - 1][2]

    def apply(self, sigma: int, x: Matrix, u: Matrix) -> Matrix:
        return self.a(sigma) @ x + self.b(sigma) @ u


# ---------------------------------------------------------------------------
# Mergence
# ---------------------------------------------------------------------------

def _merge_formula(amats, bmats, net: LogicalNetwork, numeric_mode: str):
    """Closed form: L [I_MN (x) (stacked_modes stp R)] PowerReducing_MN."""
    stacked_a = hstack(amats)
    stacked_b = hstack(bmats)
    r_dense = net.R.dense(numeric_mode)
    l_dense = net.L.dense(numeric_mode)
    reducer = power_reducing_matrix(net.M * net.N).dense(numeric_mode)
    eye = Matrix.identity(net.M * net.N, numeric_mode)
    g = stp(stp(l_dense, kronecker(eye, stp(stacked_a, r_dense))), reducer)
    h = stp(stp(l_dense, kronecker(eye, stp(stacked_b, r_dense))), reducer)
    return g, h


def _merge_blocks(amats, bmats, net: LogicalNetwork):
    """Direct placement: block (L-target, beta) of slice gamma holds the
    R-selected mode matrix; everything else is zero."""
    g_blocks: dict[tuple[int, int, int], Matrix] = {}
    h_blocks: dict[tuple[int, int, int], Matrix] = {}
    for gamma in range(1, net.M + 1):
        for beta in range(1, net.N + 1):
            col = encode_pair(gamma, beta, net.N)
            upsilon = net.L.target(col)
            sigma = net.R.target(col)
            g_blocks[(gamma, upsilon, beta)] = amats[sigma - 1]
            h_blocks[(gamma, upsilon, beta)] = bmats[sigma - 1]
    return g_blocks, h_blocks


def _flatten_blocks(blocks, net, rows_per_block, cols_per_block, numeric_mode):
    total_rows = rows_per_block * net.N
    total_cols = cols_per_block * net.M * net.N
    grid = [[0] * total_cols for _ in range(total_rows)]
    for (gamma, alpha, beta), block in blocks.items():
        row0 = (alpha - 1) * rows_per_block
        col0 = (gamma - 1) * cols_per_block * net.N + (beta - 1) * cols_per_block
        for i in range(rows_per_block):
            for j in range(cols_per_block):
                grid[row0 + i][col0 + j] = block.entries[i][j]
    return Matrix(grid, numeric_mode)


class _MergedBase:
    """Shared storage/access for direct and dual merged systems."""

    __slots__ = ("sls", "net", "flat_g", "flat_h", "g_blocks", "h_blocks", "_h_width")

    def __init__(self, sls, net, amats, bmats, h_width):
        numeric_mode = sls.mode_flag
        g_blocks, h_blocks = _merge_blocks(amats, bmats, net)
        flat_g = _flatten_blocks(g_blocks, net, sls.n, sls.n, numeric_mode)
        flat_h = _flatten_blocks(h_blocks, net, sls.n, h_width, numeric_mode)
        formula_g, formula_h = _merge_formula(amats, bmats, net, numeric_mode)
        if flat_g != formula_g or flat_h != formula_h:
            raise MergeVerificationError(
                "block placement disagrees with the closed-form construction"
            )
        object.__setattr__(self, "sls", sls)
        object.__setattr__(self, "net", net)
        object.__setattr__(self, "flat_g", flat_g)
        object.__setattr__(self, "flat_h", flat_h)
        object.__setattr__(self, "g_blocks", g_blocks)
        object.__setattr__(self, "h_blocks", h_blocks)
        object.__setattr__(self, "_h_width", h_width)

    def __setattr__(self, name, value):
        raise AttributeError("merged systems are immutable")

    def g_block(self, gamma: int, alpha: int, beta: int) -> Matrix:
        n = self.sls.n
        return self.g_blocks.get((gamma, alpha, beta), Matrix.zeros(n, n, self.sls.mode_flag))

    def h_block(self, gamma: int, alpha: int, beta: int) -> Matrix:
        n = self.sls.n
        return self.h_blocks.get(
            (gamma, alpha, beta), Matrix.zeros(n, self._h_width, self.sls.mode_flag)
        )

    def g_slice(self, gamma: int) -> Matrix:
        """The nN x nN slice of the flat G selected by input gamma."""
        n_big = self.sls.n * self.net.N
        lo = (gamma - 1) * n_big
        return Matrix(
            [row[lo:lo + n_big] for row in self.flat_g.entries], self.sls.mode_flag
        )

    def h_slice(self, gamma: int) -> Matrix:
        h_big = self._h_width * self.net.N
        lo = (gamma - 1) * h_big
        return Matrix(
            [row[lo:lo + h_big] for row in self.flat_h.entries], self.sls.mode_flag
        )

    def compressed_pattern(self, gamma: int) -> BooleanMatrix:
        """N x N sign pattern of slice gamma's blocks (1 = nonzero block)."""
        numeric_mode = self.sls.mode_flag
        bits = []
        for alpha in range(1, self.net.N + 1):
            row = []
            for beta in range(1, self.net.N + 1):
                block = self.g_blocks.get((gamma, alpha, beta))
                nonzero = block is not None and any(
                    not _is_zero(v, numeric_mode) for r in block.entries for v in r
                )
                row.append(1 if nonzero else 0)
            bits.append(row)
        return BooleanMatrix(bits)


class MergedSystem(_MergedBase):
    """Hybrid dynamics on z = theta_vec (x) x: z' = G_gamma z + H_gamma (theta_vec (x) u)."""

    def __init__(self, sls: SwitchedLinearSystem, net: LogicalNetwork):
        if net.q != sls.q:
            raise DimensionError(
                f"signal range mismatch: network emits 1..{net.q}, system has {sls.q} modes"
            )
        amats = [sls.a(i) for i in range(1, sls.q + 1)]
        bmats = [sls.b(i) for i in range(1, sls.q + 1)]
        super().__init__(sls, net, amats, bmats, sls.m)


class DualMergedSystem(_MergedBase):
    """Mergence of the transposed modes (A_i^T, C_i^T) with the same network."""

    def __init__(self, sls: SwitchedLinearSystem, net: LogicalNetwork):
        if net.q != sls.q:
            raise DimensionError(
                f"signal range mismatch: network emits 1..{net.q}, system has {sls.q} modes"
            )
        amats = [sls.a(i).transpose() for i in range(1, sls.q + 1)]
        cmats = [sls.c(i).transpose() for i in range(1, sls.q + 1)]
        super().__init__(sls, net, amats, cmats, sls.p)


def merge(sls: SwitchedLinearSystem, net: LogicalNetwork) -> MergedSystem:
    return MergedSystem(sls, net)


def merge_dual(sls: SwitchedLinearSystem, net: LogicalNetwork) -> DualMergedSystem:
    return DualMergedSystem(sls, net)


def step_merged(
    ms: MergedSystem, gamma: int, theta: int, x: Matrix, u: Matrix
) -> tuple[int, Matrix]:
    """One merged step; returns (theta_next, x_next).

    Computes z' = G_gamma (theta_vec (x) x) + H_gamma (theta_vec (x) u)
    and decodes x_next out of the single structurally nonzero block row
    (located from L, so x_next = 0 cannot erase the logical state).
    """
    sls, net = ms.sls, ms.net
    if x.shape != (sls.n, 1):
        raise DimensionError(f"x is {x.shape}, expected {sls.n}x1")
    if u.shape != (sls.m, 1):
        raise DimensionError(f"u is {u.shape}, expected {sls.m}x1")
    theta_next, _ = step(net, gamma, theta)
    numeric_mode = sls.mode_flag
    theta_vec = Matrix(
        [[1 if i == theta - 1 else 0] for i in range(net.N)], numeric_mode
    )
    z = kronecker(theta_vec, x)
    zu = kronecker(theta_vec, u)
    z_next = ms.g_slice(gamma) @ z + ms.h_slice(gamma) @ zu
    lo = (theta_next - 1) * sls.n
    x_next = Matrix([z_next.entries[lo + i] for i in range(sls.n)], numeric_mode)
    return theta_next, x_next
