#include "dr54/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dr54/digest.hpp"
#include "dr54/rng.hpp"

namespace dr54 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_gate(const Gate& g, int n_qubits) {
  const int arity = g.arity();
  for (int i = 0; i < arity; ++i)
    require(0 <= g.qubits[i] && g.qubits[i] < n_qubits,
            "circuit gate: operand out of range");
  for (int i = 0; i < arity; ++i)
    for (int j = i + 1; j < arity; ++j)
      require(g.qubits[i] != g.qubits[j],
              "circuit gate: operand indices must be distinct");
  if (g.kind == GateKind::McPhase)
    require(0.0 <= g.theta && g.theta < kTwoPi,
            "circuit gate: phase must lie in [0, 2pi)");
}

const char* mnemonic(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "x";
    case GateKind::Cnot: return "cx";
    case GateKind::Ccx: return "ccx";
    case GateKind::McPhase: return "mcphase";
  }
  return "x";
}

}  // namespace

int Gate::arity() const {
  switch (kind) {
    case GateKind::X: return 1;
    case GateKind::Cnot: return 2;
    case GateKind::Ccx:
    case GateKind::McPhase: return 3;
  }
  return 1;
}

std::vector<Gate> compile_rule54_gate(int j, int n_sites) {
  require(0 <= j && j < n_sites, "compile_rule54_gate: center out of range");
  const int left = wrap_site(j - 1, n_sites);
  const int right = wrap_site(j + 1, n_sites);
  // y' = y ^ x ^ z ^ (x & z), neighbors copied through as controls.
  return {Gate{GateKind::Cnot, {left, j, 0}},
          Gate{GateKind::Cnot, {right, j, 0}},
          Gate{GateKind::Ccx, {left, right, j}}};
}

std::vector<Gate> compile_pattern_phase(int center, int pattern, double theta,
                                        const PatternSet& set, int n_sites) {
  require(0 <= pattern && pattern < 8,
          "compile_pattern_phase: pattern index out of range");
  require(!set.is_allowed(pattern),
          "compile_pattern_phase: pattern is allowed at this center");
  require(0.0 <= theta && theta < kTwoPi,
          "compile_pattern_phase: phase must lie in [0, 2pi)");
  const int c = wrap_site(center, n_sites);
  const std::array<int, 3> qubits = {wrap_site(c - 1, n_sites), c,
                                     wrap_site(c + 1, n_sites)};
  std::vector<Gate> gates;
  // Map the selected pattern to all-ones, phase it, and uncompute.
  for (int i = 0; i < 3; ++i)
    if (((pattern >> (2 - i)) & 1) == 0)
      gates.push_back(Gate{GateKind::X, {qubits[i], 0, 0}});
  gates.push_back(Gate{GateKind::McPhase, {qubits[0], qubits[1], qubits[2]},
                       theta});
  for (int i = 0; i < 3; ++i)
    if (((pattern >> (2 - i)) & 1) == 0)
      gates.push_back(Gate{GateKind::X, {qubits[i], 0, 0}});
  return gates;
}

CircuitIR compile_floquet(const DecorationSpec& spec, int n_sites) {
  require(spec.mode == DecorationMode::DiagonalPhase,
          "compile_floquet: only diagonal-phase specs are compilable");
  require(n_sites % 2 == 0 && n_sites >= 4,
          "compile_floquet: even n_sites >= 4 required");
  CircuitIR ir;
  ir.n_qubits = n_sites;
  ir.spec_hash = fnv1a64_hex(spec_fingerprint(spec));
  ir.generator = std::string(kGeneratorId);

  const auto append = [&ir](std::vector<Gate> gates) {
    for (Gate& g : gates) ir.gates.push_back(g);
  };
  const auto decoration_phases = [&](Stage stage) {
    const std::vector<PatternSet> sets =
        layer_pattern_sets(stage, spec, n_sites);
    for (int c = 0; c < n_sites; ++c) {
      for (const auto& [pattern, value] : resolve_theta(spec, stage, sets[c])) {
        if (value == 0.0) continue;
        append(compile_pattern_phase(c, pattern, value, sets[c], n_sites));
      }
    }
  };

  for (int c = 0; c < n_sites; c += 2) append(compile_rule54_gate(c, n_sites));
  decoration_phases(Stage::AfterEven);
  for (int c = 1; c < n_sites; c += 2) append(compile_rule54_gate(c, n_sites));
  decoration_phases(Stage::AfterOdd);
  return ir;
}

std::string emit_circuit_text(const CircuitIR& ir) {
  std::string out = "# dr54-circuit v1\n";
  if (!ir.spec_hash.empty()) out += "# meta spec_hash " + ir.spec_hash + "\n";
  if (!ir.generator.empty()) out += "# meta generator " + ir.generator + "\n";
  out += "qreg " + std::to_string(ir.n_qubits) + "\n";
  for (const Gate& g : ir.gates) {
    validate_gate(g, ir.n_qubits);
    out += mnemonic(g.kind);
    for (int i = 0; i < g.arity(); ++i)
      out += " " + std::to_string(g.qubits[i]);
    if (g.kind == GateKind::McPhase) out += " " + format_double(g.theta);
    out += "\n";
  }
  return out;
}

CircuitIR parse_circuit_text(const std::string& text) {
  CircuitIR ir;
  bool saw_qreg = false;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line);
      std::string hash, key, name;
      meta >> hash >> key;
      if (key == "meta" && (meta >> name)) {
        std::string value;
        std::getline(meta, value);
        if (!value.empty() && value[0] == ' ') value.erase(0, 1);
        if (name == "spec_hash") ir.spec_hash = value;
        if (name == "generator") ir.generator = value;
      }
      continue;
    }
    std::istringstream words(line);
    std::string op;
    words >> op;
    if (op == "qreg") {
      require(!saw_qreg, "parse_circuit_text: duplicate qreg");
      require(static_cast<bool>(words >> ir.n_qubits) && ir.n_qubits >= 1,
              "parse_circuit_text: bad qreg line");
      saw_qreg = true;
      continue;
    }
    require(saw_qreg, "parse_circuit_text: gate before qreg");
    Gate g;
    if (op == "x") g.kind = GateKind::X;
    else if (op == "cx") g.kind = GateKind::Cnot;
    else if (op == "ccx") g.kind = GateKind::Ccx;
    else if (op == "mcphase") g.kind = GateKind::McPhase;
    else throw std::invalid_argument("parse_circuit_text: unknown gate " + op);
    for (int i = 0; i < g.arity(); ++i)
      require(static_cast<bool>(words >> g.qubits[i]),
              "parse_circuit_text: missing operand");
    if (g.kind == GateKind::McPhase)
      require(static_cast<bool>(words >> g.theta),
              "parse_circuit_text: missing phase");
    validate_gate(g, ir.n_qubits);
    ir.gates.push_back(g);
  }
  require(saw_qreg, "parse_circuit_text: missing qreg");
  return ir;
}

StateVector simulate_circuit(const CircuitIR& ir, const StateVector& psi0) {
  require(psi0.size() ==
              static_cast<Eigen::Index>(dim_for_sites(ir.n_qubits)),
          "simulate_circuit: dimension mismatch");
  StateVector psi = psi0;
  const auto dim = static_cast<BasisLabel>(psi.size());
  for (const Gate& g : ir.gates) {
    validate_gate(g, ir.n_qubits);
    switch (g.kind) {
      case GateKind::X: {
        const BasisLabel bit = BasisLabel{1} << g.qubits[0];
        for (BasisLabel s = 0; s < dim; ++s)
          if (!(s & bit)) std::swap(psi[s], psi[s | bit]);
        break;
      }
      case GateKind::Cnot: {
        const BasisLabel control = BasisLabel{1} << g.qubits[0];
        const BasisLabel target = BasisLabel{1} << g.qubits[1];
        for (BasisLabel s = 0; s < dim; ++s)
          if ((s & control) && !(s & target))
            std::swap(psi[s], psi[s | target]);
        break;
      }
      case GateKind::Ccx: {
        const BasisLabel c0 = BasisLabel{1} << g.qubits[0];
        const BasisLabel c1 = BasisLabel{1} << g.qubits[1];
        const BasisLabel target = BasisLabel{1} << g.qubits[2];
        for (BasisLabel s = 0; s < dim; ++s)
          if ((s & c0) && (s & c1) && !(s & target))
            std::swap(psi[s], psi[s | target]);
        break;
      }
      case GateKind::McPhase: {
        const BasisLabel mask = (BasisLabel{1} << g.qubits[0]) |
                                (BasisLabel{1} << g.qubits[1]) |
                                (BasisLabel{1} << g.qubits[2]);
        const Complex phase = std::polar(1.0, g.theta);
        for (BasisLabel s = 0; s < dim; ++s)
          if ((s & mask) == mask) psi[s] *= phase;
        break;
      }
    }
  }
  return psi;
}

DenseUnitary circuit_unitary(const CircuitIR& ir) {
  const auto dim = static_cast<Eigen::Index>(dim_for_sites(ir.n_qubits));
  DenseUnitary u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    u.col(j) = simulate_circuit(
        ir, basis_state(dim, static_cast<BasisLabel>(j)));
  return u;
}

}  // namespace dr54
