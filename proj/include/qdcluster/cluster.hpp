#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdcluster/dynamics.hpp"
#include "qdcluster/qsys.hpp"

// Cluster/graph-state construction and verification.
//
// Encoding: the graph-state "computational" basis here is the sigma_x
// eigenbasis |0>,|1> (eigenvalues +1,-1), so x and z swap their textbook
// roles. The entangling gate exp(-i pi n_i n_j), n = (1+s^x)/2, puts the
// pi phase on the both-sigma_x=+1 component of a pair.
//
// Stabilizer generators in this convention:
//   K_i = s_i^z prod_{j~i} (-s_j^x)
// where s^z = |-><-| - |+><+| flips |0> <-> |1> with no sign, and each
// neighbor contributes exp(-i pi n_j) = -s_j^x. Worked 2-qubit example:
// the generated state is (-|00> + |01> + |10> + |11>)/2, and
//   s_1^z (-s_2^x) : |00> -> -|10>, |01> -> +|11>, |10> -> -|00>, |11> -> +|01>,
// which maps the state to itself with eigenvalue +1. Dropping the neighbor
// minus signs would flip the expectation to (-1)^{deg(i)}.

namespace qdc {

struct InteractionGraph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based, i < j, sorted, unique
  std::string label = "custom";

  InteractionGraph(int n, std::vector<std::pair<int, int>> edge_list,
                   std::string label_tag = "custom");

  static InteractionGraph complete(int n);
  static InteractionGraph chain(int n);

  int degree(int vertex) const;
};

// in-place basis changes between sigma_x eigenbasis coordinates and the
// {|+>,|->} computational basis (N-fold Kronecker power of xbasis_columns)
void xbasis_to_computational(Vec& v, int n_qubits);
void computational_to_xbasis(Vec& v, int n_qubits);

// tensor power of |->: 2^{-N/2} (x)_i (|0>_i + |1>_i)
StateVector initial_product_state(int n_qubits);

// Operator ground truth: the pairwise gate of the schedule applied to
// the product state. The schedule must satisfy 4 lambda tau = (2n+1) pi.
StateVector generated_cluster_state(int n_qubits, const GateSchedule& schedule);

// pairwise diagonal gate exp(-i phase n_i n_j) over exactly the graph edges
StateVector graph_state(const InteractionGraph& graph, double phase);

// The printed closed-form cluster-state expression is typographically
// ambiguous (the operator product's index does not match its running
// index), so each documented parsing is built separately and compared
// against the generated state instead of being asserted.
enum class FormulaInterpretation {
  // operator product read as (s_i^x)^{N-i} acting on the site-i ket itself;
  // collapses to the product state 2^{-N/2} (x)_i ((-1)^{N-i}|0> + |1>)
  literal_product,
  // product re-indexed to s_j^x acting on the later factors j = i+1..N,
  // expanded right to left
  chain_reindexed,
};

StateVector cluster_formula_state(int n_qubits, FormulaInterpretation interpretation);
std::string formula_interpretation_name(FormulaInterpretation interpretation);
std::string formula_interpretation_rule(FormulaInterpretation interpretation);

// <K_i> per vertex; +1 (to 1e-10) on graph_state(graph, pi)
std::vector<double> stabilizer_expectations(const StateVector& state,
                                            const InteractionGraph& graph);

// |<a|b>|^2
double state_fidelity(const StateVector& a, const StateVector& b);

}  // namespace qdc
