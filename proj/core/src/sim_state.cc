#include "winarith/sim_state.h"

#include <algorithm>
#include <string>

#include "winarith/errors.h"

namespace winarith {

Quint Quint::slice(std::size_t begin, std::size_t end) const {
  end = std::min(end, qubits_.size());
  begin = std::min(begin, end);
  return Quint(std::vector<Qubit>(qubits_.begin() + static_cast<std::ptrdiff_t>(begin),
                                  qubits_.begin() + static_cast<std::ptrdiff_t>(end)));
}

Quint Quint::join(const Quint& low, const Quint& high) {
  std::vector<Qubit> all(low.qubits_);
  all.insert(all.end(), high.qubits_.begin(), high.qubits_.end());
  return Quint(std::move(all));
}

SimState::SimState(std::uint64_t seed) : rng_(seed) {}

std::uint32_t SimState::intern_label(std::string_view label) {
  std::string key(label);
  auto it = label_ids_.find(key);
  if (it != label_ids_.end()) {
    return it->second;
  }
  auto id = static_cast<std::uint32_t>(labels_.size());
  labels_.push_back(key);
  label_ids_.emplace(std::move(key), id);
  return id;
}

Qubit SimState::alloc_qubit(std::string_view label) {
  std::uint32_t id;
  if (!free_ids_.empty()) {
    id = free_ids_.back();
    free_ids_.pop_back();
  } else {
    id = static_cast<std::uint32_t>(bits_.size());
    bits_.push_back(0);
    live_.push_back(0);
    label_of_.push_back(0);
  }
  bits_[id] = 0;
  live_[id] = 1;
  label_of_[id] = intern_label(label);
  ++live_count_;
  tally_.ancilla_high_water = std::max<std::uint64_t>(tally_.ancilla_high_water, live_count_);
  return Qubit{id};
}

void SimState::free_qubit(Qubit q) {
  require_live(q);
  if (bits_[q.id] != 0) {
    throw NonZeroRelease("released qubit '" + std::string(label(q)) + "' (id " +
                         std::to_string(q.id) + ") holds 1");
  }
  live_[q.id] = 0;
  free_ids_.push_back(q.id);
  --live_count_;
}

Quint SimState::qalloc(std::size_t n, std::string_view label) {
  std::vector<Qubit> qs;
  qs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    qs.push_back(alloc_qubit(label));
  }
  return Quint(std::move(qs));
}

QuintMod SimState::qalloc_mod(const BigInt& modulus, std::string_view label) {
  if (modulus < 1) {
    throw PreconditionError("modulus must be positive");
  }
  return QuintMod{qalloc(ceil_lg(modulus), label), modulus};
}

void SimState::qfree(const Quint& q) {
  for (Qubit b : q.qubits()) {
    require_live(b);
    if (bits_[b.id] != 0) {
      throw NonZeroRelease("released register '" + std::string(label(b)) + "' is not zero");
    }
  }
  // Release in reverse so ids come back in allocation order.
  for (std::size_t i = q.size(); i-- > 0;) {
    free_qubit(q[i]);
  }
}

std::string_view SimState::label(Qubit q) const {
  if (q.id >= label_of_.size()) {
    return "?";
  }
  return labels_[label_of_[q.id]];
}

void SimState::require_live(Qubit q) const {
  if (!is_live(q)) {
    throw PreconditionError("qubit " + std::to_string(q.id) + " is not live");
  }
}

BigInt SimState::read(const Quint& q) const {
  std::vector<std::uint8_t> bits(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    require_live(q[i]);
    bits[i] = bits_[q[i].id];
  }
  return from_bits(bits);
}

bool SimState::bit(Qubit q) const {
  require_live(q);
  return bits_[q.id] != 0;
}

void SimState::xor_constant(const Quint& q, const BigInt& v) {
  if (v < 0 || bit_length(v) > q.size()) {
    throw PreconditionError("xor_constant: value does not fit the register");
  }
  auto control = active_control();
  for_each_set_bit(v, q.size(), [&](std::size_t i) {
    if (control) {
      cnot(*control, q[i]);
    } else {
      x(q[i]);
    }
  });
}

void SimState::x(Qubit q) {
  require_live(q);
  bits_[q.id] ^= 1;
}

void SimState::cnot(Qubit control, Qubit target) {
  require_live(control);
  require_live(target);
  if (control == target) {
    throw PreconditionError("cnot: control and target coincide");
  }
  bits_[target.id] ^= bits_[control.id];
}

void SimState::cz(Qubit a, Qubit b) {
  require_live(a);
  require_live(b);
}

void SimState::apply_and(Qubit c1, Qubit c2, Qubit t) {
  require_live(c1);
  require_live(c2);
  require_live(t);
  if (bits_[t.id] != 0) {
    throw PreconditionError("apply_and: target qubit is not zero");
  }
  bits_[t.id] = bits_[c1.id] & bits_[c2.id];
  ++tally_.toffolis;
}

void SimState::uncompute_and(Qubit c1, Qubit c2, Qubit t) {
  require_live(c1);
  require_live(c2);
  require_live(t);
  if (bits_[t.id] != (bits_[c1.id] & bits_[c2.id])) {
    throw PreconditionError("uncompute_and: target does not hold the AND of its controls");
  }
  // The X-basis outcome only decides whether a CZ fixup is applied, which
  // has no effect on a basis state.
  next_random_bit();
  bits_[t.id] = 0;
  ++tally_.measurements;
}

void SimState::apply_cswap(Qubit c, Qubit a, Qubit b) {
  require_live(c);
  require_live(a);
  require_live(b);
  if (bits_[c.id] != 0) {
    std::swap(bits_[a.id], bits_[b.id]);
  }
  ++tally_.toffolis;
}

bool SimState::measure_x(Qubit q) {
  require_live(q);
  bool outcome = next_random_bit();
  bits_[q.id] = 0;
  ++tally_.measurements;
  return outcome;
}

bool SimState::next_random_bit() {
  if (random_bits_left_ == 0) {
    random_word_ = rng_();
    random_bits_left_ = 64;
  }
  bool b = (random_word_ & 1) != 0;
  random_word_ >>= 1;
  --random_bits_left_;
  return b;
}

std::optional<Qubit> SimState::active_control() const {
  if (controls_.empty()) {
    return std::nullopt;
  }
  return controls_.back().control;
}

SimState::ControlFrame::ControlFrame(SimState& sim, Qubit c) : sim_(sim) {
  sim_.require_live(c);
  auto outer = sim_.active_control();
  if (!outer) {
    sim_.controls_.push_back(ControlEntry{c, false, {}, {}});
    return;
  }
  Qubit combined = sim_.alloc_qubit("control_and");
  sim_.apply_and(*outer, c, combined);
  sim_.controls_.push_back(ControlEntry{combined, true, *outer, c});
}

SimState::ControlFrame::~ControlFrame() {
  ControlEntry entry = sim_.controls_.back();
  sim_.controls_.pop_back();
  if (entry.owned) {
    try {
      sim_.uncompute_and(entry.outer, entry.inner, *entry.control);
      sim_.free_qubit(*entry.control);
    } catch (...) {
      // Only reachable when the body already threw and left the state broken.
    }
  }
}

SimState::ControlSuspension::ControlSuspension(SimState& sim) : sim_(sim) {
  sim_.controls_.push_back(ControlEntry{std::nullopt, false, {}, {}});
}

SimState::ControlSuspension::~ControlSuspension() { sim_.controls_.pop_back(); }

}  // namespace winarith
