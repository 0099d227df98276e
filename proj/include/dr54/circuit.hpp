#pragma once

#include <array>
#include <string>
#include <vector>

#include "dr54/decorations.hpp"
#include "dr54/linalg.hpp"

namespace dr54 {

enum class GateKind { X, Cnot, Ccx, McPhase };

// Elementary gate over qubit indices (already resolved mod N). For Cnot the
// operands are (control, target); for Ccx (control, control, target);
// McPhase applies e^{i theta} when all three operands are 1.
struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 3> qubits{0, 0, 0};
  double theta = 0.0;

  int arity() const;
  friend bool operator==(const Gate&, const Gate&) = default;
};

struct CircuitIR {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::string spec_hash;
  std::string generator;

  friend bool operator==(const CircuitIR&, const CircuitIR&) = default;
};

// The three-gate realization of the Rule-54 update at center j:
// CNOT(j-1 -> j), CNOT(j+1 -> j), CCX(j-1, j+1 -> j).
std::vector<Gate> compile_rule54_gate(int j, int n_sites);

// Pattern-controlled phase C_tau(theta) on (center-1, center, center+1):
// X on the operands where the pattern bit is 0, a three-controlled phase,
// then the same X gates. The pattern must be forbidden for the set.
std::vector<Gate> compile_pattern_phase(int center, int pattern, double theta,
                                        const PatternSet& set, int n_sites);

// One decorated Floquet period in diagonal-phase mode: U_e gates, the
// after-even pattern phases, U_o gates, the after-odd pattern phases.
// Zero-phase factors are elided. Throws for non-diagonal specs.
CircuitIR compile_floquet(const DecorationSpec& spec, int n_sites);

// Line-oriented portable text; byte-deterministic for a fixed IR, phases
// printed with 17 significant digits so parsing restores them exactly.
std::string emit_circuit_text(const CircuitIR& ir);
CircuitIR parse_circuit_text(const std::string& text);

// Gate-by-gate statevector application; X/CNOT/CCX as label bit operations,
// McPhase as a conditional phase multiply.
StateVector simulate_circuit(const CircuitIR& ir, const StateVector& psi0);

// Dense matrix of the circuit, column by column (verification oracle).
DenseUnitary circuit_unitary(const CircuitIR& ir);

}  // namespace dr54
