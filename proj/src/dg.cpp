#include "vlasov/dg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vlasov::dg {

GaussRule gauss_nodes(int order) {
  if (order < 1 || order > max_nodes) {
    throw std::invalid_argument("gauss_nodes: order must be in [1, " + std::to_string(max_nodes) +
                                "], got " + std::to_string(order));
  }
  const int n = order;
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n starting from the Tricomi estimate of the i-th root.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // recompute the derivative at the converged root for the weight
    double p0 = 1.0;
    double p1 = t;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (t * p1 - p0) / (t * t - 1.0);
    rule.nodes[i] = 0.5 * (1.0 - t);
    rule.weights[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  if (n == 1) {
    rule.nodes[0] = 0.5;
    rule.weights[0] = 1.0;
  }
  // symmetrize to remove last-bit asymmetry between mirrored nodes
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[i] + (1.0 - rule.nodes[n - 1 - i]));
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = x;
    rule.nodes[n - 1 - i] = 1.0 - x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

void orthonormal_legendre(double x, std::span<double> values) {
  const std::size_t n = values.size();
  if (n == 0) return;
  const double t = 2.0 * x - 1.0;
  double p0 = 1.0;
  double p1 = t;
  values[0] = 1.0;
  if (n > 1) values[1] = std::sqrt(3.0) * t;
  for (std::size_t k = 2; k < n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / static_cast<double>(k);
    p0 = p1;
    p1 = p2;
    values[k] = std::sqrt(2.0 * k + 1.0) * p2;
  }
}

void lagrange_basis(std::span<const double> nodes, double x, std::span<double> values) {
  const std::size_t n = nodes.size();
  for (std::size_t m = 0; m < n; ++m) {
    if (x == nodes[m]) {
      std::fill(values.begin(), values.end(), 0.0);
      values[m] = 1.0;
      return;
    }
  }
  // barycentric formula of the second kind
  double denom = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    double lambda = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != m) lambda /= (nodes[m] - nodes[j]);
    }
    values[m] = lambda / (x - nodes[m]);
    denom += values[m];
  }
  for (std::size_t m = 0; m < n; ++m) values[m] /= denom;
}

ProjectionBuilder::ProjectionBuilder(int degree) : nodes_(degree + 1) {
  if (degree < 0 || degree > max_degree) {
    throw std::invalid_argument("ProjectionBuilder: degree out of range");
  }
  rule_ = gauss_nodes(nodes_);
  const int n = nodes_;
  for (int m = 0; m < n; ++m) {
    double lambda = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j != m) lambda /= (rule_.nodes[m] - rule_.nodes[j]);
    }
    barycentric_[m] = lambda;
    norm_[m] = std::sqrt(2.0 * m + 1.0);
  }
  for (int j = 0; j < n; ++j) legendre(rule_.nodes[j], phi_nodes_.data() + j * n);
}

void ProjectionBuilder::legendre(double x, double* values) const {
  const double t = 2.0 * x - 1.0;
  double p0 = 1.0;
  double p1 = t;
  values[0] = 1.0;
  if (nodes_ > 1) values[1] = norm_[1] * t;
  for (int k = 2; k < nodes_; ++k) {
    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
    values[k] = norm_[k] * p2;
  }
}

void ProjectionBuilder::lagrange(double x, double* values) const {
  const int n = nodes_;
  double denom = 0.0;
  for (int m = 0; m < n; ++m) {
    const double diff = x - rule_.nodes[m];
    if (diff == 0.0) {
      for (int j = 0; j < n; ++j) values[j] = 0.0;
      values[m] = 1.0;
      return;
    }
    values[m] = barycentric_[m] / diff;
    denom += values[m];
  }
  for (int m = 0; m < n; ++m) values[m] /= denom;
}

ProjectionPair ProjectionBuilder::operator()(double shift, double h) const {
  if (!(h > 0.0)) throw std::invalid_argument("projection_pair: h must be positive");
  const int n = nodes_;
  ProjectionPair pair;
  pair.nodes = n;
  const double s = shift / h;
  const double q = std::floor(s);
  pair.q = static_cast<long>(q);
  pair.alpha = s - q;
  if (pair.alpha >= 1.0) {
    pair.alpha = 0.0;
    pair.q += 1;
  }
  const double alpha = pair.alpha;

  if (alpha == 0.0) {
    for (int j = 0; j < n; ++j) pair.b[j * n + j] = 1.0;
    return pair;
  }

  // c_left[k][m] = int_0^alpha phi_k(x) l_m(x+1-alpha) dx
  // c_right[k][m] = int_alpha^1 phi_k(x) l_m(x-alpha) dx
  std::array<double, max_nodes * max_nodes> c_left{};
  std::array<double, max_nodes * max_nodes> c_right{};
  std::array<double, max_nodes> phi{};
  std::array<double, max_nodes> lag{};
  for (int g = 0; g < n; ++g) {
    const double xl = alpha * rule_.nodes[g];
    const double wl = alpha * rule_.weights[g];
    legendre(xl, phi.data());
    lagrange(xl + 1.0 - alpha, lag.data());
    for (int k = 0; k < n; ++k) {
      const double f = wl * phi[k];
      for (int m = 0; m < n; ++m) c_left[k * n + m] += f * lag[m];
    }

    const double xr = alpha + (1.0 - alpha) * rule_.nodes[g];
    const double wr = (1.0 - alpha) * rule_.weights[g];
    legendre(xr, phi.data());
    lagrange(xr - alpha, lag.data());
    for (int k = 0; k < n; ++k) {
      const double f = wr * phi[k];
      for (int m = 0; m < n; ++m) c_right[k * n + m] += f * lag[m];
    }
  }

  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      double sa = 0.0;
      double sb = 0.0;
      for (int k = 0; k < n; ++k) {
        sa += phi_nodes_[j * n + k] * c_left[k * n + m];
        sb += phi_nodes_[j * n + k] * c_right[k * n + m];
      }
      pair.a[j * n + m] = sa;
      pair.b[j * n + m] = sb;
    }
  }
  return pair;
}

ProjectionPair projection_pair(double shift, double h, int degree) { return ProjectionBuilder(degree)(shift, h); }

namespace {

template <int NP>
void apply_pair(const double* in, double* out, long cells, long src0, const double* a, const double* b) {
  long left = src0;
  long right = src0 + 1 == cells ? 0 : src0 + 1;
  for (long i = 0; i < cells; ++i) {
    const double* ul = in + left * NP;
    const double* ur = in + right * NP;
    double* o = out + i * NP;
    for (int j = 0; j < NP; ++j) {
      double acc = 0.0;
      for (int l = 0; l < NP; ++l) acc += a[j * NP + l] * ul[l];
      for (int l = 0; l < NP; ++l) acc += b[j * NP + l] * ur[l];
      o[j] = acc;
    }
    left = right;
    right = right + 1 == cells ? 0 : right + 1;
  }
}

void advect_cells(std::span<const double> in, std::span<double> out, int np, long q, double alpha, const double* a,
                  const double* b) {
  if (in.size() != out.size() || in.size() % static_cast<std::size_t>(np) != 0) {
    throw std::invalid_argument("advect_line: line length is not a multiple of the nodes per cell");
  }
  const long cells = static_cast<long>(in.size()) / np;
  if (cells < 2) throw std::invalid_argument("advect_line: need at least two cells");

  // source of output cell 0 is cell -q (right) and -q-1 (left)
  long right0 = (-q) % cells;
  if (right0 < 0) right0 += cells;

  if (alpha == 0.0) {
    for (long i = 0; i < cells; ++i) {
      long src = right0 + i;
      if (src >= cells) src -= cells;
      std::copy_n(in.data() + src * np, np, out.data() + i * np);
    }
    return;
  }

  const long left0 = right0 == 0 ? cells - 1 : right0 - 1;
  switch (np) {
    case 1: apply_pair<1>(in.data(), out.data(), cells, left0, a, b); break;
    case 2: apply_pair<2>(in.data(), out.data(), cells, left0, a, b); break;
    case 3: apply_pair<3>(in.data(), out.data(), cells, left0, a, b); break;
    case 4: apply_pair<4>(in.data(), out.data(), cells, left0, a, b); break;
    case 5: apply_pair<5>(in.data(), out.data(), cells, left0, a, b); break;
    case 6: apply_pair<6>(in.data(), out.data(), cells, left0, a, b); break;
    case 7: apply_pair<7>(in.data(), out.data(), cells, left0, a, b); break;
    case 8: apply_pair<8>(in.data(), out.data(), cells, left0, a, b); break;
    case 9: apply_pair<9>(in.data(), out.data(), cells, left0, a, b); break;
    default: throw std::invalid_argument("advect_line: unsupported number of nodes per cell");
  }
}

}  // namespace

void advect_line(std::span<const double> in, std::span<double> out, const ProjectionPair& pair) {
  advect_cells(in, out, pair.nodes, pair.q, pair.alpha, pair.a.data(), pair.b.data());
}

PairTable::PairTable(int nodes, std::size_t entries)
    : nodes_(nodes), q_(entries, 0), alpha_(entries, 0.0), matrices_(entries * 2 * nodes * nodes, 0.0) {}

void PairTable::set(std::size_t entry, const ProjectionPair& pair) {
  if (pair.nodes != nodes_) throw std::invalid_argument("PairTable: degree mismatch");
  const std::size_t nn = static_cast<std::size_t>(nodes_) * nodes_;
  q_[entry] = pair.q;
  alpha_[entry] = pair.alpha;
  std::copy_n(pair.a.data(), nn, matrices_.data() + 2 * nn * entry);
  std::copy_n(pair.b.data(), nn, matrices_.data() + 2 * nn * entry + nn);
}

void PairTable::apply(std::size_t entry, std::span<const double> in, std::span<double> out) const {
  const std::size_t nn = static_cast<std::size_t>(nodes_) * nodes_;
  const double* a = matrices_.data() + 2 * nn * entry;
  advect_cells(in, out, nodes_, q_[entry], alpha_[entry], a, a + nn);
}

std::vector<double> advect_line_dg(std::span<const double> line, double shift, double h, int degree) {
  const ProjectionPair pair = projection_pair(shift, h, degree);
  std::vector<double> out(line.size());
  advect_line(line, out, pair);
  return out;
}

}  // namespace vlasov::dg
