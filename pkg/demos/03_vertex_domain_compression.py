"""Ninety percent compression by modeling the covariance as a shift polynomial.

A stationary covariance is a polynomial in the shift operator.  A filter
with L coefficients makes that polynomial degree 2(L-1), so Q = 2L-1
coefficients describe the entire N x N covariance; with Q = 13 unknowns a
budget of K = 10 vertices (K^2 = 100 >= 13) suffices for N = 100 -- a 90%
compression.  Building the model needs no eigendecomposition (only powers
of the shift operator); the eigenvalues enter only at the end to map the
recovered coefficients back to a spectrum.
"""

import numpy as np

from graphpsd import (
    DesignObjective,
    build_laplacian,
    build_vertex_model,
    eigendecompose,
    estimate_spectrum_vertex,
    fit_lowpass_filter,
    greedy_design,
    random_sensor_graph,
    required_q,
    subsampled_covariance,
    true_covariance,
    true_power_spectrum,
)

graph = random_sensor_graph(100, k_neighbors=6, seed=1)
shift = build_laplacian(graph)
basis = eigendecompose(shift)
filt = fit_lowpass_filter(basis, length=7, rate=3.0)
p_true = true_power_spectrum(filt, basis)
r_true = true_covariance(filt, basis)

q = required_q(filt.length, graph.n_vertices)
print(f"filter length L=7 -> polynomial order Q = min(2L-1, N) = {q}")

objective = DesignObjective.vertex(shift, q)
pattern, _ = greedy_design(objective, 10)
print(f"greedy pattern (K=10, 90% compression): {pattern.selected}")

model = build_vertex_model(shift, pattern, q)
est = estimate_spectrum_vertex(subsampled_covariance(r_true, pattern), model, basis)
err = np.abs(est.p_hat - p_true).max() / p_true.max()
print(f"Q={q}: rank_ok={est.rank_ok}, sup error {err:.2e} (exact recovery)")

# the recovered coefficients are the filter's squared polynomial, i.e. the
# self-convolution of its coefficient vector
alpha_oracle = np.convolve(filt.coefficients, filt.coefficients)
print(f"coefficient error vs convolution oracle: "
      f"{np.abs(est.alpha_hat - alpha_oracle).max():.2e}")

# an undersized order still fits well here because the spectrum is smooth,
# but recovery is no longer exact
model12 = build_vertex_model(shift, pattern, 12)
est12 = estimate_spectrum_vertex(subsampled_covariance(r_true, pattern), model12, basis)
nmse12 = np.sum((est12.p_hat - p_true) ** 2) / np.sum(p_true**2)
print(f"Q=12: rank_ok={est12.rank_ok}, nmse {nmse12:.2e} (model bias only)")
