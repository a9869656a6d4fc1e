#include "cvqa/clifford.hpp"

#include <bit>
#include <stdexcept>

namespace cvqa {

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::SWAP;
}

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::S:
      return "S";
    case GateKind::Sdg:
      return "SDG";
    case GateKind::X:
      return "X";
    case GateKind::Y:
      return "Y";
    case GateKind::Z:
      return "Z";
    case GateKind::CX:
      return "CX";
    case GateKind::CZ:
      return "CZ";
    case GateKind::SWAP:
      return "SWAP";
  }
  return "?";
}

namespace {

void check_targets(const CliffordGate& g, std::size_t n) {
  if (g.q0 >= n) {
    throw std::invalid_argument("gate target out of range");
  }
  if (is_two_qubit(g.kind) && (g.q1 >= n || g.q1 == g.q0)) {
    throw std::invalid_argument("gate targets must be distinct and in range");
  }
}

// Single-qubit Pauli with an explicit text letter and sign, embedded in n
// qubits. sign_phase is added on top of the canonical letter phase.
PauliString embedded(std::size_t n, std::size_t q, char letter,
                     int sign_phase) {
  PauliString p(n);
  p.set_letter(q, letter);
  p.add_phase(sign_phase);
  return p;
}

// Image g^dagger X_q g of the X generator on one of the gate's targets.
PauliString image_x(const CliffordGate& g, std::size_t q, std::size_t n) {
  switch (g.kind) {
    case GateKind::H:
      return embedded(n, q, 'Z', 0);
    case GateKind::S:
      return embedded(n, q, 'Y', 2);  // -Y
    case GateKind::Sdg:
      return embedded(n, q, 'Y', 0);
    case GateKind::X:
      return embedded(n, q, 'X', 0);
    case GateKind::Y:
      return embedded(n, q, 'X', 2);
    case GateKind::Z:
      return embedded(n, q, 'X', 2);
    case GateKind::CX:
      if (q == g.q0) {  // control
        PauliString p(n);
        p.set_letter(g.q0, 'X');
        p.set_letter(g.q1, 'X');
        return p;
      }
      return embedded(n, q, 'X', 0);
    case GateKind::CZ: {
      PauliString p(n);
      p.set_letter(q, 'X');
      p.set_letter(q == g.q0 ? g.q1 : g.q0, 'Z');
      return p;
    }
    case GateKind::SWAP:
      return embedded(n, q == g.q0 ? g.q1 : g.q0, 'X', 0);
  }
  throw std::logic_error("unreachable");
}

PauliString image_z(const CliffordGate& g, std::size_t q, std::size_t n) {
  switch (g.kind) {
    case GateKind::H:
      return embedded(n, q, 'X', 0);
    case GateKind::S:
    case GateKind::Sdg:
      return embedded(n, q, 'Z', 0);
    case GateKind::X:
      return embedded(n, q, 'Z', 2);
    case GateKind::Y:
      return embedded(n, q, 'Z', 2);
    case GateKind::Z:
      return embedded(n, q, 'Z', 0);
    case GateKind::CX:
      if (q == g.q1) {  // target
        PauliString p(n);
        p.set_letter(g.q0, 'Z');
        p.set_letter(g.q1, 'Z');
        return p;
      }
      return embedded(n, q, 'Z', 0);
    case GateKind::CZ:
      return embedded(n, q, 'Z', 0);
    case GateKind::SWAP:
      return embedded(n, q == g.q0 ? g.q1 : g.q0, 'Z', 0);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

PauliString conj_gate(const CliffordGate& g, const PauliString& p) {
  const std::size_t n = p.num_qubits();
  check_targets(g, n);
  if (g.kind == GateKind::SWAP) {
    PauliString r = p;
    const char a = p.letter(g.q0);
    const char b = p.letter(g.q1);
    r.set_letter(g.q0, b);
    r.set_letter(g.q1, a);
    return r;
  }
  // Factor off the target-qubit letters and multiply their images back in
  // canonical X-then-Z order per qubit; factors on distinct qubits commute.
  PauliString r = p;
  std::size_t targets[2] = {g.q0, g.q1};
  const std::size_t nt = is_two_qubit(g.kind) ? 2 : 1;
  for (std::size_t i = 0; i < nt; ++i) {
    r.set_x(targets[i], false);
    r.set_z(targets[i], false);
  }
  for (std::size_t i = 0; i < nt; ++i) {
    const std::size_t q = targets[i];
    if (p.x(q)) {
      r = mul(r, image_x(g, q, n));
    }
    if (p.z(q)) {
      r = mul(r, image_z(g, q, n));
    }
  }
  return r;
}

PauliString conj_rotation_quarter(const PauliString& generator, int quarters,
                                  const PauliString& p) {
  if (!generator.is_hermitian()) {
    throw std::invalid_argument("rotation generator must be Hermitian");
  }
  const int k = ((quarters % 4) + 4) % 4;
  if (k == 0 || generator.commutes(p)) {
    return p;
  }
  if (k == 2) {
    PauliString r = p;
    r.negate();
    return r;
  }
  PauliString r = mul(generator, p);
  r.add_phase(k == 1 ? 1 : 3);  // +iGP or -iGP
  return r;
}

StabilizerState::StabilizerState(std::size_t n) : n_(n) {
  generators_.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    PauliString z(n);
    z.set_letter(q, 'Z');
    generators_.push_back(std::move(z));
  }
  build_reduced();
}

StabilizerState::StabilizerState(std::size_t n,
                                 std::vector<PauliString> generators)
    : n_(n), generators_(std::move(generators)) {
  if (generators_.size() != n) {
    throw std::invalid_argument("stabilizer state needs exactly n generators");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].num_qubits() != n || !generators_[i].is_hermitian()) {
      throw std::invalid_argument("generators must be n-qubit Hermitian");
    }
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (!generators_[i].commutes(generators_[j])) {
        throw std::invalid_argument("generators must commute pairwise");
      }
    }
  }
  build_reduced();
}

namespace {

std::size_t packed_leading_bit(const PauliString& p) {
  const auto xs = p.x_words();
  const auto zs = p.z_words();
  for (std::size_t w = 0; w < xs.size(); ++w) {
    if (xs[w]) return 64 * w + static_cast<std::size_t>(std::countr_zero(xs[w]));
  }
  const std::size_t off = 64 * xs.size();
  for (std::size_t w = 0; w < zs.size(); ++w) {
    if (zs[w]) {
      return off + 64 * w + static_cast<std::size_t>(std::countr_zero(zs[w]));
    }
  }
  return static_cast<std::size_t>(-1);
}

bool packed_bit(const PauliString& p, std::size_t idx) {
  const auto xs = p.x_words();
  const std::size_t off = 64 * xs.size();
  if (idx < off) {
    return (xs[idx >> 6] >> (idx & 63)) & 1;
  }
  idx -= off;
  return (p.z_words()[idx >> 6] >> (idx & 63)) & 1;
}

}  // namespace

void StabilizerState::build_reduced() {
  reduced_.clear();
  pivots_.clear();
  for (const PauliString& g : generators_) {
    PauliString v = g;
    for (std::size_t r = 0; r < reduced_.size(); ++r) {
      if (packed_bit(v, pivots_[r])) {
        v = mul(v, reduced_[r]);
      }
    }
    const std::size_t pivot = packed_leading_bit(v);
    if (pivot == static_cast<std::size_t>(-1)) {
      throw std::invalid_argument("stabilizer generators are dependent");
    }
    reduced_.push_back(std::move(v));
    pivots_.push_back(pivot);
  }
}

int StabilizerState::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("qubit count mismatch");
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument("expectation requires a Hermitian Pauli");
  }
  // Reduce P against the group; if the symplectic part survives, P is not
  // in the stabilizer group up to sign and the expectation is 0.
  PauliString acc = PauliString::identity(n_);
  PauliString v = p;
  for (std::size_t r = 0; r < reduced_.size(); ++r) {
    if (packed_bit(v, pivots_[r])) {
      v = mul(v, reduced_[r]);
      acc = mul(acc, reduced_[r]);
    }
  }
  if (packed_leading_bit(v) != static_cast<std::size_t>(-1)) {
    return 0;
  }
  // Now acc and p agree symplectically; compare signs.
  const int d = (p.phase() - acc.phase() + 4) & 3;
  if (d == 0) return 1;
  if (d == 2) return -1;
  throw std::logic_error("inconsistent phase between Pauli and stabilizer");
}

}  // namespace cvqa
