#include "winarith/dense_state.h"

#include <cmath>
#include <string>

#include "winarith/errors.h"

namespace winarith {
namespace {

constexpr double kZeroTolerance = 1e-24;

}  // namespace

DenseState::DenseState(std::uint64_t seed) : amps_{Amplitude(1.0)}, rng_(seed) {}

std::size_t DenseState::pos(Qubit q) const {
  if (q.id >= position_of_.size() || position_of_[q.id] < 0) {
    throw PreconditionError("qubit " + std::to_string(q.id) + " is not live");
  }
  return static_cast<std::size_t>(position_of_[q.id]);
}

Qubit DenseState::alloc_qubit(std::string_view) {
  if (positions_.size() >= kMaxQubits) {
    throw QubitBudgetExceeded("dense state is limited to " + std::to_string(kMaxQubits) + " qubits");
  }
  std::uint32_t id;
  if (!free_ids_.empty()) {
    id = free_ids_.back();
    free_ids_.pop_back();
  } else {
    id = static_cast<std::uint32_t>(position_of_.size());
    position_of_.push_back(-1);
  }
  position_of_[id] = static_cast<std::int32_t>(positions_.size());
  positions_.push_back(id);
  amps_.resize(amps_.size() * 2, Amplitude(0.0));
  return Qubit{id};
}

void DenseState::free_qubit(Qubit q) {
  if (!is_definitely_zero(q)) {
    throw NonZeroRelease("dense qubit " + std::to_string(q.id) + " released while not |0>");
  }
  const std::size_t p = pos(q);
  const std::size_t top = positions_.size() - 1;
  if (p != top) {
    // Move the top qubit into position p, then drop the top position.
    const std::uint64_t bp = std::uint64_t{1} << p;
    const std::uint64_t bt = std::uint64_t{1} << top;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & bt) != 0 && (i & bp) == 0) {
        std::swap(amps_[i], amps_[(i ^ bt) | bp]);
      }
    }
    positions_[p] = positions_[top];
    position_of_[positions_[p]] = static_cast<std::int32_t>(p);
  }
  positions_.pop_back();
  amps_.resize(amps_.size() / 2);
  position_of_[q.id] = -1;
  free_ids_.push_back(q.id);
}

void DenseState::x(Qubit q) {
  const std::uint64_t m = mask(q);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & m) == 0) std::swap(amps_[i], amps_[i | m]);
  }
}

void DenseState::z(Qubit q) {
  const std::uint64_t m = mask(q);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & m) != 0) amps_[i] = -amps_[i];
  }
}

void DenseState::h(Qubit q) {
  const std::uint64_t m = mask(q);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & m) == 0) {
      Amplitude a = amps_[i];
      Amplitude b = amps_[i | m];
      amps_[i] = (a + b) * r;
      amps_[i | m] = (a - b) * r;
    }
  }
}

void DenseState::cnot(Qubit control, Qubit target) {
  const std::uint64_t c = mask(control);
  const std::uint64_t t = mask(target);
  if (c == t) throw PreconditionError("cnot: control equals target");
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & c) != 0 && (i & t) == 0) std::swap(amps_[i], amps_[i | t]);
  }
}

void DenseState::cz(Qubit a, Qubit b) {
  const std::uint64_t both = mask(a) | mask(b);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & both) == both) amps_[i] = -amps_[i];
  }
}

void DenseState::toffoli(Qubit c1, Qubit c2, Qubit t) {
  const std::uint64_t c = mask(c1) | mask(c2);
  const std::uint64_t tm = mask(t);
  if ((c & tm) != 0) throw PreconditionError("toffoli: target overlaps a control");
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & c) == c && (i & tm) == 0) std::swap(amps_[i], amps_[i | tm]);
  }
}

void DenseState::apply_cswap(Qubit c, Qubit a, Qubit b) {
  const std::uint64_t cm = mask(c);
  const std::uint64_t am = mask(a);
  const std::uint64_t bm = mask(b);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & cm) != 0 && (i & am) != 0 && (i & bm) == 0) std::swap(amps_[i], amps_[(i ^ am) | bm]);
  }
}

void DenseState::apply_and(Qubit c1, Qubit c2, Qubit t) {
  if (!is_definitely_zero(t)) {
    throw PreconditionError("apply_and: target is not |0>");
  }
  toffoli(c1, c2, t);
}

void DenseState::uncompute_and(Qubit c1, Qubit c2, Qubit t) {
  if (measure_x(t)) {
    cz(c1, c2);
  }
}

void DenseState::apply_gate(GateKind gate, std::span<const Qubit> qubits) {
  auto arity = [&](std::size_t expected) {
    if (qubits.size() != expected) {
      throw PreconditionError("gate expects " + std::to_string(expected) + " qubits, got " +
                              std::to_string(qubits.size()));
    }
  };
  switch (gate) {
    case GateKind::kX: arity(1); x(qubits[0]); break;
    case GateKind::kH: arity(1); h(qubits[0]); break;
    case GateKind::kZ: arity(1); z(qubits[0]); break;
    case GateKind::kCnot: arity(2); cnot(qubits[0], qubits[1]); break;
    case GateKind::kCz: arity(2); cz(qubits[0], qubits[1]); break;
    case GateKind::kToffoli: arity(3); toffoli(qubits[0], qubits[1], qubits[2]); break;
    case GateKind::kCswap: arity(3); apply_cswap(qubits[0], qubits[1], qubits[2]); break;
  }
}

double DenseState::probability_one(Qubit q) const {
  const std::uint64_t m = mask(q);
  double p = 0;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & m) != 0) p += std::norm(amps_[i]);
  }
  return p;
}

bool DenseState::is_definitely_zero(Qubit q) const { return probability_one(q) < kZeroTolerance; }

double DenseState::norm() const {
  double s = 0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

bool DenseState::measure(Qubit q) {
  const std::uint64_t m = mask(q);
  const double p1 = probability_one(q);
  bool outcome;
  if (forced_) {
    outcome = *forced_;
    const double p = outcome ? p1 : 1.0 - p1;
    if (p < 1e-12) throw PreconditionError("forced measurement outcome has zero probability");
  } else {
    outcome = std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p1;
  }
  const double keep = outcome ? p1 : 1.0 - p1;
  const double scale = 1.0 / std::sqrt(keep);
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (((i & m) != 0) == outcome) {
      amps_[i] *= scale;
    } else {
      amps_[i] = 0;
    }
  }
  return outcome;
}

bool DenseState::measure_z(Qubit q) { return measure(q); }

bool DenseState::measure_x(Qubit q) {
  h(q);
  bool outcome = measure(q);
  if (outcome) x(q);
  return outcome;
}

void DenseState::set_state(std::span<const Qubit> qubits, std::span<const Amplitude> amps) {
  if (amps.size() != (std::size_t{1} << qubits.size())) {
    throw PreconditionError("set_state: need 2^len(qubits) amplitudes");
  }
  std::vector<std::uint64_t> masks;
  for (Qubit q : qubits) masks.push_back(mask(q));
  std::fill(amps_.begin(), amps_.end(), Amplitude(0.0));
  for (std::size_t v = 0; v < amps.size(); ++v) {
    std::uint64_t index = 0;
    for (std::size_t b = 0; b < masks.size(); ++b) {
      if ((v >> b) & 1) index |= masks[b];
    }
    amps_[index] = amps[v];
  }
}

std::vector<DenseState::Amplitude> DenseState::amplitudes(std::span<const Qubit> qubits) const {
  std::vector<std::uint64_t> masks;
  std::uint64_t all = 0;
  for (Qubit q : qubits) {
    masks.push_back(mask(q));
    all |= masks.back();
  }
  std::vector<Amplitude> out(std::size_t{1} << qubits.size(), Amplitude(0.0));
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & ~all) != 0) {
      if (std::norm(amps_[i]) > kZeroTolerance) {
        throw PreconditionError("amplitudes: other live qubits are not |0>");
      }
      continue;
    }
    std::size_t v = 0;
    for (std::size_t b = 0; b < masks.size(); ++b) {
      if ((i & masks[b]) != 0) v |= std::size_t{1} << b;
    }
    out[v] = amps_[i];
  }
  return out;
}

std::optional<BigInt> DenseState::basis_value(std::span<const Qubit> qubits) const {
  std::optional<std::uint64_t> found;
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if (std::norm(amps_[i]) > 1e-12) {
      if (found) return std::nullopt;
      found = i;
    }
  }
  if (!found) return std::nullopt;
  BigInt value = 0;
  for (std::size_t b = 0; b < qubits.size(); ++b) {
    if ((*found & mask(qubits[b])) != 0) value |= pow2(b);
  }
  return value;
}

}  // namespace winarith
