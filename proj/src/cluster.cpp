#include "qdcluster/cluster.hpp"

#include <algorithm>
#include <cmath>

namespace qdc {

// in-place (xbasis_columns)^{(x) N} times v: x-basis coordinates -> {|+>,|->}
void xbasis_to_computational(Vec& v, int n_qubits) {
  const long d = v.size();
  const double r = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < n_qubits; ++q) {
    const long stride = d >> (q + 1);
    for (long base = 0; base < d; base += 2 * stride)
      for (long i = base; i < base + stride; ++i) {
        const cplx u0 = v(i), u1 = v(i + stride);
        v(i) = (u0 - u1) * r;
        v(i + stride) = (u0 + u1) * r;
      }
  }
}

void computational_to_xbasis(Vec& v, int n_qubits) {
  const long d = v.size();
  const double r = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < n_qubits; ++q) {
    const long stride = d >> (q + 1);
    for (long base = 0; base < d; base += 2 * stride)
      for (long i = base; i < base + stride; ++i) {
        const cplx u0 = v(i), u1 = v(i + stride);
        v(i) = (u0 + u1) * r;
        v(i + stride) = (u1 - u0) * r;
      }
  }
}

namespace {

// bit of vertex (1-based) in an x-basis index; qubit 1 is the slowest bit
inline int zbit(unsigned long z, int vertex, int n_qubits) {
  return static_cast<int>((z >> (n_qubits - vertex)) & 1UL);
}

}  // namespace

InteractionGraph::InteractionGraph(int n, std::vector<std::pair<int, int>> edge_list,
                                   std::string label_tag)
    : n_vertices(n), edges(std::move(edge_list)), label(std::move(label_tag)) {
  if (n < 1) throw qdc_error("InteractionGraph: need at least one vertex");
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
    if (a == b) throw qdc_error("InteractionGraph: self-loop");
    if (a < 1 || b > n) throw qdc_error("InteractionGraph: vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw qdc_error("InteractionGraph: duplicate edge");
}

InteractionGraph InteractionGraph::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  return InteractionGraph(n, std::move(e), "complete");
}

InteractionGraph InteractionGraph::chain(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return InteractionGraph(n, std::move(e), "chain");
}

int InteractionGraph::degree(int vertex) const {
  int d = 0;
  for (const auto& [a, b] : edges)
    if (a == vertex || b == vertex) ++d;
  return d;
}

StateVector initial_product_state(int n_qubits) {
  const HilbertLayout layout(n_qubits, 0);
  Vec v = Vec::Zero(layout.dim());
  v(layout.dim() - 1) = 1.0;  // every qubit in |->
  return StateVector(layout, std::move(v));
}

StateVector generated_cluster_state(int n_qubits, const GateSchedule& schedule) {
  const double want = (2.0 * schedule.n + 1.0) * pi;
  if (std::abs(4.0 * schedule.lambda_rad_s * schedule.tau_s - want) > 1e-9 * want)
    throw qdc_error("generated_cluster_state: schedule violates 4*lambda*tau = (2n+1)*pi");
  if (n_qubits == 1) return initial_product_state(1);  // empty pair sum
  return apply(u_cluster_gate(n_qubits, schedule.lambda_rad_s, schedule.tau_s),
               initial_product_state(n_qubits));
}

StateVector graph_state(const InteractionGraph& graph, double phase) {
  if (!std::isfinite(phase)) throw qdc_error("graph_state: phase must be finite");
  const int n = graph.n_vertices;
  const HilbertLayout layout(n, 0);
  const long d = layout.dim();
  const double amp = std::pow(2.0, -0.5 * n);
  Vec v(d);
  for (long z = 0; z < d; ++z) {
    int active = 0;  // edges with both endpoints in |0> (n-occupation 1)
    for (const auto& [a, b] : graph.edges)
      if (zbit(z, a, n) == 0 && zbit(z, b, n) == 0) ++active;
    v(z) = amp * std::exp(cplx(0, -phase * active));
  }
  xbasis_to_computational(v, n);
  return StateVector(layout, std::move(v));
}

StateVector cluster_formula_state(int n_qubits, FormulaInterpretation interpretation) {
  const HilbertLayout layout(n_qubits, 0);
  const long d = layout.dim();
  const double amp = std::pow(2.0, -0.5 * n_qubits);
  Vec v(d);
  for (long z = 0; z < d; ++z) {
    double sign = 1.0;
    for (int i = 1; i <= n_qubits; ++i) {
      if (zbit(z, i, n_qubits) != 0) continue;  // factor |1> carries no sign
      if ((n_qubits - i) % 2 != 0) sign = -sign;  // (-1)^{N-i}
      if (interpretation == FormulaInterpretation::chain_reindexed) {
        int ones_after = 0;
        for (int j = i + 1; j <= n_qubits; ++j) ones_after += zbit(z, j, n_qubits);
        if (ones_after % 2 != 0) sign = -sign;
      }
    }
    v(z) = amp * sign;
  }
  xbasis_to_computational(v, n_qubits);
  StateVector s(layout, std::move(v));
  s.normalize();
  return s;
}

std::string formula_interpretation_name(FormulaInterpretation i) {
  switch (i) {
    case FormulaInterpretation::literal_product: return "literal_product";
    case FormulaInterpretation::chain_reindexed: return "chain_reindexed";
  }
  throw qdc_error("cluster_formula_state: unknown interpretation tag");
}

std::string formula_interpretation_rule(FormulaInterpretation i) {
  switch (i) {
    case FormulaInterpretation::literal_product:
      return "factor i reads |0>_i * (-1)^(N-i) * (s_i^x)^(N-i) + |1>_i with the "
             "operator acting on its own ket, collapsing to the product state "
             "2^(-N/2) prod_i ((-1)^(N-i)|0>_i + |1>_i)";
    case FormulaInterpretation::chain_reindexed:
      return "factor i reads |0>_i * (-1)^(N-i) * prod_{j=i+1..N} s_j^x + |1>_i with "
             "the re-indexed operators acting on the later factors, expanded right "
             "to left";
  }
  throw qdc_error("cluster_formula_state: unknown interpretation tag");
}

std::vector<double> stabilizer_expectations(const StateVector& state,
                                            const InteractionGraph& graph) {
  const int n = graph.n_vertices;
  if (state.layout.n_qubits != n || state.layout.fock_cutoff != 0)
    throw qdc_error("stabilizer_expectations: state layout does not match graph");
  Vec x = state.amplitudes;
  computational_to_xbasis(x, n);
  const long d = x.size();
  std::vector<double> out;
  out.reserve(n);
  for (int i = 1; i <= n; ++i) {
    const long flip = 1L << (n - i);
    const double vertex_sign = (graph.degree(i) % 2 == 0) ? 1.0 : -1.0;
    cplx acc = 0.0;
    for (long z = 0; z < d; ++z) {
      double s = vertex_sign;
      for (const auto& [a, b] : graph.edges) {
        if (a != i && b != i) continue;
        const int other = (a == i) ? b : a;
        if (zbit(static_cast<unsigned long>(z), other, n) != 0) s = -s;
      }
      acc += std::conj(x(z)) * s * x(z ^ flip);
    }
    out.push_back(acc.real());
  }
  return out;
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(overlap(a, b));
}

}  // namespace qdc
