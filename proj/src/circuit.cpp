#include "cvqa/circuit.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cvqa/rng.hpp"

namespace cvqa {

ParamPoint CliffordPoint::to_param_point() const {
  ParamPoint p;
  p.angles.reserve(quarters.size());
  for (std::uint8_t q : quarters) {
    p.angles.push_back(q * (std::numbers::pi / 2.0));
  }
  return p;
}

void ParamCircuit::append(const CliffordGate& g) {
  if (g.q0 >= n_ || (is_two_qubit(g.kind) && (g.q1 >= n_ || g.q1 == g.q0))) {
    throw std::invalid_argument("gate targets out of range");
  }
  ops_.push_back(g);
}

std::size_t ParamCircuit::append_rotation(PauliString generator) {
  if (generator.num_qubits() != n_) {
    throw std::invalid_argument("rotation generator qubit count mismatch");
  }
  if (!generator.is_hermitian()) {
    throw std::invalid_argument("rotation generator must be Hermitian");
  }
  if (num_params_ + 1 > 64 * n_ * n_) {
    throw std::invalid_argument("parameter count cap exceeded");
  }
  const std::size_t idx = num_params_++;
  ops_.push_back(Rotation{std::move(generator), idx});
  return idx;
}

void ParamCircuit::append_rotation_indexed(PauliString generator,
                                           std::size_t index) {
  if (!generator.is_hermitian()) {
    throw std::invalid_argument("rotation generator must be Hermitian");
  }
  ops_.push_back(Rotation{std::move(generator), index});
  if (index + 1 > num_params_) {
    num_params_ = index + 1;
  }
}

std::string ParamCircuit::to_text() const {
  std::ostringstream out;
  out << "QUBITS " << n_ << "\n";
  for (const CircuitOp& op : ops_) {
    if (const auto* g = std::get_if<CliffordGate>(&op)) {
      out << gate_name(g->kind) << " " << g->q0;
      if (is_two_qubit(g->kind)) {
        out << " " << g->q1;
      }
      out << "\n";
    } else {
      const auto& r = std::get<Rotation>(op);
      out << "ROT " << r.generator.to_text() << " " << r.param_index << "\n";
    }
  }
  return out.str();
}

ParamCircuit ParamCircuit::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ParamCircuit circuit(0);
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string op;
    ls >> op;
    if (op == "QUBITS") {
      std::size_t n = 0;
      if (!(ls >> n)) {
        throw std::invalid_argument("bad QUBITS line");
      }
      circuit = ParamCircuit(n);
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw std::invalid_argument("circuit text must start with QUBITS");
    }
    if (op == "ROT") {
      std::string pauli;
      std::size_t index = 0;
      if (!(ls >> pauli >> index)) {
        throw std::invalid_argument("bad ROT line: " + line);
      }
      circuit.append_rotation_indexed(PauliString::from_text(pauli), index);
      continue;
    }
    std::size_t q0 = 0, q1 = 0;
    GateKind kind;
    if (op == "H") kind = GateKind::H;
    else if (op == "S") kind = GateKind::S;
    else if (op == "SDG") kind = GateKind::Sdg;
    else if (op == "X") kind = GateKind::X;
    else if (op == "Y") kind = GateKind::Y;
    else if (op == "Z") kind = GateKind::Z;
    else if (op == "CX") kind = GateKind::CX;
    else if (op == "CZ") kind = GateKind::CZ;
    else if (op == "SWAP") kind = GateKind::SWAP;
    else throw std::invalid_argument("unknown op: " + op);
    if (!(ls >> q0)) {
      throw std::invalid_argument("bad gate line: " + line);
    }
    if (is_two_qubit(kind) && !(ls >> q1)) {
      throw std::invalid_argument("two-qubit gate needs two targets: " + line);
    }
    circuit.append(CliffordGate{kind, q0, q1});
  }
  if (!have_header) {
    throw std::invalid_argument("empty circuit text");
  }
  // Verify the parameter-index bijection.
  std::vector<int> seen(circuit.num_params(), 0);
  for (const CircuitOp& op : circuit.ops()) {
    if (const auto* r = std::get_if<Rotation>(&op)) {
      if (++seen[r->param_index] > 1) {
        throw std::invalid_argument("duplicate parameter index");
      }
    }
  }
  for (int s : seen) {
    if (s == 0) {
      throw std::invalid_argument("parameter index gap");
    }
  }
  return circuit;
}

ParamCircuit build_brickwork(std::size_t n, std::size_t layers) {
  if (n < 2) {
    throw std::invalid_argument("brickwork needs n >= 2");
  }
  if (layers < 1) {
    throw std::invalid_argument("brickwork needs layers >= 1");
  }
  ParamCircuit circuit(n);
  for (std::size_t layer = 1; layer <= layers; ++layer) {
    const std::size_t offset = (layer % 2 == 1) ? 0 : 1;
    for (std::size_t q = offset; q + 1 < n; q += 2) {
      circuit.append(CliffordGate::two(GateKind::CZ, q, q + 1));
      for (std::size_t t : {q, q + 1}) {
        PauliString rx(n);
        rx.set_letter(t, 'X');
        circuit.append_rotation(std::move(rx));
        PauliString rz(n);
        rz.set_letter(t, 'Z');
        circuit.append_rotation(std::move(rz));
      }
    }
  }
  return circuit;
}

std::size_t brickwork_param_count(std::size_t n, std::size_t layers) {
  const std::size_t odd_bricks = n / 2;
  const std::size_t even_bricks = (n - 1) / 2;
  const std::size_t odd_layers = (layers + 1) / 2;
  const std::size_t even_layers = layers / 2;
  return 4 * (odd_layers * odd_bricks + even_layers * even_bricks);
}

Fixture build_fixture(FixtureKind kind, std::size_t n) {
  if (kind == FixtureKind::product_rx) {
    if (n < 1) {
      throw std::invalid_argument("product_rx needs n >= 1");
    }
    ParamCircuit circuit(n);
    for (std::size_t q = 0; q < n; ++q) {
      PauliString rx(n);
      rx.set_letter(q, 'X');
      circuit.append_rotation(std::move(rx));
    }
    PauliString all_z(n);
    for (std::size_t q = 0; q < n; ++q) {
      all_z.set_letter(q, 'Z');
    }
    return Fixture{std::move(circuit), Observable::single(all_z)};
  }
  if (n < 2) {
    throw std::invalid_argument("global_rotation_bp needs n >= 2");
  }
  ParamCircuit circuit = build_brickwork(n, 1);
  PauliString global(n);
  global.set_letter(0, 'X');
  for (std::size_t q = 1; q < n; ++q) {
    global.set_letter(q, 'Z');
  }
  circuit.append_rotation(std::move(global));
  PauliString all_z(n);
  for (std::size_t q = 0; q < n; ++q) {
    all_z.set_letter(q, 'Z');
  }
  return Fixture{std::move(circuit), Observable::single(all_z)};
}

ParamPoint sample_uniform_point(std::size_t m, std::uint64_t seed,
                                std::uint64_t index) {
  Rng rng(seed, {0x756e69666f726dULL, index});
  ParamPoint p;
  p.angles.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    p.angles.push_back(rng.angle());
  }
  return p;
}

CliffordPoint sample_clifford_point(std::size_t m, std::uint64_t seed,
                                    std::uint64_t index) {
  Rng rng(seed, {0x636c6966666f7264ULL, index});
  CliffordPoint p;
  p.quarters.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    p.quarters.push_back(rng.quarter());
  }
  return p;
}

ParamCircuit random_circuit(std::size_t n, std::size_t num_rotations,
                            std::uint64_t seed) {
  Rng rng(seed, {0x72616e64ULL});
  ParamCircuit circuit(n);
  static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
  for (std::size_t r = 0; r < num_rotations; ++r) {
    // A couple of random Clifford gates between rotations.
    const std::size_t gates = rng.integer(3);
    for (std::size_t g = 0; g < gates; ++g) {
      switch (rng.integer(n >= 2 ? 4 : 2)) {
        case 0:
          circuit.append(CliffordGate::one(GateKind::H, rng.integer(n)));
          break;
        case 1:
          circuit.append(CliffordGate::one(GateKind::S, rng.integer(n)));
          break;
        case 2: {
          const std::size_t a = rng.integer(n);
          std::size_t b = rng.integer(n - 1);
          if (b >= a) ++b;
          circuit.append(CliffordGate::two(GateKind::CX, a, b));
          break;
        }
        default: {
          const std::size_t a = rng.integer(n);
          std::size_t b = rng.integer(n - 1);
          if (b >= a) ++b;
          circuit.append(CliffordGate::two(GateKind::CZ, a, b));
          break;
        }
      }
    }
    PauliString gen(n);
    const std::size_t q0 = rng.integer(n);
    gen.set_letter(q0, kLetters[rng.integer(3)]);
    if (n >= 2 && rng.integer(2) == 1) {
      std::size_t q1 = rng.integer(n - 1);
      if (q1 >= q0) ++q1;
      gen.set_letter(q1, kLetters[rng.integer(3)]);
    }
    circuit.append_rotation(std::move(gen));
  }
  return circuit;
}

CliffordPoint restrict_point(const SplitPoint& split,
                             const std::vector<std::uint8_t>& free_quarters) {
  if (free_quarters.size() != split.free_indices.size()) {
    throw std::invalid_argument("free value count mismatch");
  }
  CliffordPoint p = split.base;
  for (std::size_t i = 0; i < free_quarters.size(); ++i) {
    p.quarters[split.free_indices[i]] = free_quarters[i];
  }
  return p;
}

ParamPoint restrict_point(const SplitPoint& split,
                          const std::vector<double>& free_angles) {
  if (free_angles.size() != split.free_indices.size()) {
    throw std::invalid_argument("free value count mismatch");
  }
  ParamPoint p = split.base.to_param_point();
  for (std::size_t i = 0; i < free_angles.size(); ++i) {
    p.angles[split.free_indices[i]] = free_angles[i];
  }
  return p;
}

}  // namespace cvqa
