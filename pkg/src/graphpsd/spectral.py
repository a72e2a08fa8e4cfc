"""Graph Fourier basis, polynomial filters, and stationary-signal statistics.

The shift operator's eigenvectors play the role of a Fourier basis and its
eigenvalues the role of frequencies.  A polynomial filter shapes white noise
into a stationary process whose power spectrum is the squared frequency
response of the filter.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, InvariantViolation


@dataclass(frozen=True)
class SpectralBasis:
    """Eigendecomposition of a shift operator.

    ``eigenvalues`` are ascending; column ``n`` of ``eigenvectors`` pairs
    with ``eigenvalues[n]``.  The basis carries a fixed sign convention: in
    every column the entry of largest magnitude is positive (first such
    entry on ties), which makes the decomposition deterministic.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float)
        u = np.asarray(self.eigenvectors, dtype=float)
        lam.flags.writeable = False
        u.flags.writeable = False
        object.__setattr__(self, "eigenvalues", lam)
        object.__setattr__(self, "eigenvectors", u)

    @property
    def n(self):
        return self.eigenvalues.shape[0]


@dataclass(frozen=True)
class GraphFilter:
    """Polynomial filter ``H = sum_l h_l S^l`` given by its coefficients."""

    coefficients: np.ndarray

    def __post_init__(self):
        h = np.atleast_1d(np.asarray(self.coefficients, dtype=float))
        if h.ndim != 1 or h.size < 1:
            raise InvariantViolation("filter needs at least one coefficient")
        if not np.all(np.isfinite(h)):
            raise InvariantViolation("filter coefficients must be finite")
        h.flags.writeable = False
        object.__setattr__(self, "coefficients", h)

    @property
    def length(self):
        return self.coefficients.shape[0]


@dataclass(frozen=True)
class CovarianceEstimate:
    """Symmetric covariance matrix tagged with the snapshot count behind it.

    ``n_snapshots == 0`` marks a population (exact) covariance.
    """

    matrix: np.ndarray
    n_snapshots: int = 0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvariantViolation("covariance must be square")
        scale = np.abs(m).max() if m.size else 0.0
        if scale and np.abs(m - m.T).max() > 1e-12 * scale:
            raise InvariantViolation("covariance is not symmetric")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def n(self):
        return self.matrix.shape[0]


def eigendecompose(shift):
    """Spectral basis of a symmetric shift operator.

    Eigenvalues come out ascending and each eigenvector is sign-fixed so
    that repeated calls on the same matrix give identical bases.

    Raises :class:`ConvergenceFailure` if the eigensolver fails.
    """
    try:
        lam, u = np.linalg.eigh(shift.matrix)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigendecomposition failed: {exc}") from exc
    if not (np.all(np.isfinite(lam)) and np.all(np.isfinite(u))):
        raise ConvergenceFailure("eigendecomposition produced non-finite values")
    # sign convention: largest-magnitude entry per column positive
    pivot = np.argmax(np.abs(u), axis=0)
    signs = np.sign(u[pivot, np.arange(u.shape[1])])
    signs[signs == 0] = 1.0
    return SpectralBasis(eigenvalues=lam, eigenvectors=u * signs)


def vandermonde(eigenvalues, order):
    """N x order matrix of eigenvalue powers, ``V[i, q] = lam_i**q``."""
    lam = np.asarray(eigenvalues, dtype=float)
    if order < 1:
        raise InvariantViolation("vandermonde order must be >= 1")
    return np.vander(lam, N=order, increasing=True)


def frequency_response(filt, basis):
    """Filter response at each graph frequency: ``V_L h``."""
    v = vandermonde(basis.eigenvalues, filt.length)
    return v @ filt.coefficients


def filter_matrix(filt, basis):
    """Dense filter matrix ``U diag(V_L h) U^T``.

    Equals the matrix polynomial ``sum_l h_l S^l`` evaluated directly.
    """
    u = basis.eigenvectors
    return (u * frequency_response(filt, basis)) @ u.T


def true_power_spectrum(filt, basis):
    """Ground-truth power spectrum of the filtered process: ``(V_L h)^2``."""
    resp = frequency_response(filt, basis)
    return resp * resp


def true_covariance(filt, basis):
    """Population covariance ``H H^T`` of the filtered white-noise process."""
    h = filter_matrix(filt, basis)
    r = h @ h.T
    return CovarianceEstimate(matrix=(r + r.T) / 2.0, n_snapshots=0)


def synthesize(filt, basis, n_snapshots, seed=0):
    """Draw stationary realizations by filtering white noise.

    Returns an ``N x n_snapshots`` array whose columns are independent
    samples ``H n`` with ``n`` i.i.d. standard normal.  Deterministic in
    ``seed``.
    """
    if n_snapshots < 1:
        raise InvariantViolation("need n_snapshots >= 1")
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((basis.n, n_snapshots))
    return filter_matrix(filt, basis) @ noise


def sample_covariance(snapshots, subtract_mean=False):
    """Sample covariance ``(1/N_s) X X^T`` of snapshot columns.

    The process is synthesized zero-mean, so no mean is subtracted by
    default; pass ``subtract_mean=True`` to remove the empirical mean.
    """
    x = np.asarray(snapshots, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    n_snapshots = x.shape[1]
    if subtract_mean:
        x = x - x.mean(axis=1, keepdims=True)
    r = (x @ x.T) / n_snapshots
    return CovarianceEstimate(matrix=(r + r.T) / 2.0, n_snapshots=n_snapshots)


def is_stationary(cov, basis, tol=1e-8):
    """Check joint diagonalizability of a covariance with the basis.

    Rotates the covariance into the spectral domain and compares
    off-diagonal to diagonal energy.  Returns ``(stationary, ratio)`` where
    ``ratio = sum(offdiag^2) / sum(diag^2)``.
    """
    u = basis.eigenvectors
    m = u.T @ cov.matrix @ u
    diag_energy = float(np.sum(np.diag(m) ** 2))
    off_energy = float(np.sum(m * m)) - diag_energy
    if diag_energy == 0.0:
        ratio = 0.0 if off_energy == 0.0 else np.inf
    else:
        ratio = max(off_energy, 0.0) / diag_energy
    return ratio <= tol, ratio


def fit_lowpass_filter(basis, length=7, rate=3.0):
    """Least-squares lowpass filter for the experiment pipeline.

    Fits ``length`` polynomial coefficients so the frequency response
    matches ``exp(-rate * lam / lam_max)`` at the basis eigenvalues.  Any
    smooth decaying profile would do; this one is fixed so experiments are
    self-describing.
    """
    lam = basis.eigenvalues
    lam_max = float(lam.max())
    if lam_max <= 0.0:
        raise InvariantViolation("spectrum has no positive eigenvalue to normalize by")
    target = np.exp(-rate * lam / lam_max)
    coeffs, *_ = np.linalg.lstsq(vandermonde(lam, length), target, rcond=None)
    return GraphFilter(coefficients=coeffs)


def save_matrix_csv(path, matrix):
    """Write a dense matrix as CSV with a ``# rows cols`` header."""
    m = np.atleast_2d(np.asarray(matrix, dtype=float))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {m.shape[0]} {m.shape[1]}\n")
        for row in m:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")


def load_matrix_csv(path):
    """Read a matrix written by :func:`save_matrix_csv`."""
    from .errors import ParseError

    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("#"):
            raise ParseError("missing '# rows cols' header", 1)
        try:
            rows, cols = (int(t) for t in header[1:].split())
        except ValueError as exc:
            raise ParseError(f"bad header: {exc}", 1) from exc
        data = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            values = [float(t) for t in line.split(",")]
            if len(values) != cols:
                raise ParseError(f"expected {cols} columns", lineno)
            data.append(values)
    if len(data) != rows:
        raise ParseError(f"expected {rows} rows, got {len(data)}")
    return np.array(data)
