#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "modexp/graph.hpp"

namespace modexp {

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  double gap = 0.0;                 // max_{i != 0} |1 - λ_i|
  double tolerance = 1e-10;
};

// Dense symmetric matrix stored row-major.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[index(i, j)]; }
  double operator()(int i, int j) const { return a_[index(i, j)]; }

  double off_diagonal_norm() const {
    double sum = 0.0;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i != j) sum += (*this)(i, j) * (*this)(i, j);
      }
    }
    return std::sqrt(sum);
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_;
  std::vector<double> a_;
};

// Cyclic Jacobi plane rotations until the off-diagonal Frobenius norm drops
// below `tolerance` or `max_sweeps` is reached. Returns ascending eigenvalues.
inline std::vector<double> jacobi_eigenvalues(SymmetricMatrix a, double tolerance = 1e-10, int max_sweeps = 100) {
  const int n = a.size();
  for (int sweep = 0; sweep < max_sweeps && a.off_diagonal_norm() >= tolerance; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p);
          double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k);
          double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

// I - D^{-1/2} A D^{-1/2}; a loop of weight w puts 2w on the diagonal of A so
// that row sums of A equal the degrees.
inline SymmetricMatrix normalized_laplacian(const Graph& g) {
  const int n = g.n();
  std::vector<double> adj(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j); };
  for (const Edge& e : g.edges()) {
    double w = e.w.to_double();
    if (e.is_loop()) {
      adj[at(e.u, e.u)] += 2.0 * w;
    } else {
      adj[at(e.u, e.v)] += w;
      adj[at(e.v, e.u)] += w;
    }
  }
  SymmetricMatrix lap(n);
  for (int i = 0; i < n; ++i) {
    double di = g.degree(i).to_double();
    for (int j = 0; j < n; ++j) {
      double dj = g.degree(j).to_double();
      lap(i, j) = (i == j ? 1.0 : 0.0) - adj[at(i, j)] / std::sqrt(di * dj);
    }
  }
  return lap;
}

inline SpectralReport spectral_gap(const Graph& g, double tolerance = 1e-10) {
  if (g.n() == 0) throw Error(Errc::empty_graph, "spectral gap of the empty graph");
  if (g.has_isolated_vertex()) throw Error(Errc::zero_degree_vertex, "normalized Laplacian needs positive degrees");
  if (!is_connected(g)) throw Error(Errc::disconnected, "spectral gap needs a connected graph");
  SpectralReport report;
  report.tolerance = tolerance;
  report.eigenvalues = jacobi_eigenvalues(normalized_laplacian(g), tolerance);
  // λ_0 is the eigenvalue nearest zero; it is simple for connected graphs.
  std::size_t zero_index = 0;
  for (std::size_t i = 1; i < report.eigenvalues.size(); ++i) {
    if (std::abs(report.eigenvalues[i]) < std::abs(report.eigenvalues[zero_index])) zero_index = i;
  }
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    if (i != zero_index) report.gap = std::max(report.gap, std::abs(1.0 - report.eigenvalues[i]));
  }
  return report;
}

}  // namespace modexp
