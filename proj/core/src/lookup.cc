#include "winarith/lookup.h"

#include <algorithm>
#include <string>

#include "winarith/errors.h"
#include "winarith/lookup_circuits.h"

namespace winarith {
namespace {

void check_address(const SimState& sim, const Quint& address, const LookupTable& table) {
  if (address.size() < table.address_width()) {
    throw PreconditionError("address register too short for a table of " + std::to_string(table.size()) +
                            " entries");
  }
  if (sim.read(address) >= table.size()) {
    throw TableOutOfBounds("lookup address is outside the table of " + std::to_string(table.size()) +
                           " entries");
  }
}

}  // namespace

bool overlaps(const Quint& a, const Quint& b) {
  std::vector<std::uint32_t> ids;
  ids.reserve(a.size() + b.size());
  for (Qubit q : a.qubits()) ids.push_back(q.id);
  std::sort(ids.begin(), ids.end());
  for (Qubit q : b.qubits()) {
    if (std::binary_search(ids.begin(), ids.end(), q.id)) {
      return true;
    }
  }
  return false;
}

void xor_lookup(SimState& sim, const Quint& address, const LookupTable& table, const Quint& target,
                std::optional<Qubit> control) {
  auto context = sim.active_control();
  if (control && context) {
    throw PreconditionError("xor_lookup: explicit control inside a control context");
  }
  if (!control) {
    control = context;
  }
  if (target.size() < table.output_width()) {
    throw PreconditionError("xor_lookup: target narrower than the table output");
  }
  check_address(sim, address, table);
  if (sim.checks() && overlaps(address, target)) {
    throw PreconditionError("xor_lookup: address and target overlap");
  }
  SimState::ControlSuspension suspend(sim);
  sim.count_lookup();
  xor_lookup_gates(sim, address.qubits(), table, target.qubits(), control);
}

void unlookup(SimState& sim, const Quint& address, const LookupTable& table, const Quint& target) {
  check_address(sim, address, table);
  if (sim.checks()) {
    BigInt expected = table[static_cast<std::size_t>(sim.read(address))];
    if (sim.read(target) != expected) {
      throw PreconditionError("unlookup: target does not hold the looked-up entry");
    }
  }
  SimState::ControlSuspension suspend(sim);
  unlookup_gates(sim, address.qubits(), table, target.qubits());
}

void init_unary(SimState& sim, const Quint& binary, const Quint& unary) {
  if (unary.size() != (std::size_t{1} << binary.size())) {
    throw PreconditionError("init_unary: unary register must have 2^len(binary) qubits");
  }
  if (sim.read(unary) != 0) {
    throw PreconditionError("init_unary: unary register is not zeroed");
  }
  init_unary_gates(sim, binary.qubits(), unary.qubits());
}

void clear_unary(SimState& sim, const Quint& binary, const Quint& unary) {
  if (unary.size() != (std::size_t{1} << binary.size())) {
    throw PreconditionError("clear_unary: unary register must have 2^len(binary) qubits");
  }
  if (sim.read(unary) != pow2(static_cast<std::size_t>(sim.read(binary)))) {
    throw PreconditionError("clear_unary: unary register is not the one-hot form of binary");
  }
  clear_unary_gates(sim, binary.qubits(), unary.qubits());
}

}  // namespace winarith
