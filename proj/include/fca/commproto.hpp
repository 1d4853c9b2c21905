#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fca/automaton.hpp"
#include "fca/configuration.hpp"
#include "fca/predict.hpp"

namespace fca {

// An n-step prediction input split along the first-coordinate hyperplane:
// Alice holds the cells of B(rn) with first coordinate <= 0, Bob the rest.
struct SplitInstance {
  std::int64_t n = 1;
  std::vector<StateId> alice; // cells with pi_1 <= 0, in box order
  std::vector<StateId> bob;   // cells with pi_1 > 0, in box order

  static SplitInstance from_pattern(const CellularAutomaton& ca, std::int64_t n,
                                    const Pattern& input);
  Pattern join(const CellularAutomaton& ca) const;
};

enum class Party { Alice, Bob };
enum class RoundTag { Init, Counter, DiffReport };

struct ProtocolRound {
  Party sender;
  std::int64_t bits = 0;
  RoundTag tag;
  std::int64_t changes = 0; // diff reports: number of reported cell changes
};

struct ProtocolTranscript {
  std::vector<ProtocolRound> rounds;
  StateId answer = 0;
  std::int64_t total_bits = 0;

  std::int64_t bits_with_tag(RoundTag tag) const {
    std::int64_t b = 0;
    for (const auto& r : rounds)
      if (r.tag == tag) b += r.bits;
    return b;
  }
  std::int64_t diff_changes() const {
    std::int64_t c = 0;
    for (const auto& r : rounds)
      if (r.tag == RoundTag::DiffReport) c += r.changes;
    return c;
  }
};

// One round: Alice ships her whole half, Bob answers with the oracle value.
ProtocolTranscript run_trivial_protocol(const CellularAutomaton& ca,
                                        const SplitInstance& inst);

// Per-round snapshots for white-box tests: party knowledge at each sync time.
struct DiffReportDiagnostics {
  struct Sync {
    std::int64_t time = 0;
    std::vector<StateId> alice_region; // Alice's half at the sync time
    std::vector<StateId> bob_region;   // Bob's half at the sync time
  };
  std::vector<Sync> syncs;
};

// The boundary-zone protocol: both parties simulate their half assuming the
// other boundary zone frozen, exchange first-change counters, and the earliest
// changer ships a diff report; everyone rolls back to the synchronized time.
// Total non-init traffic is governed by the number of real changes in the
// boundary zones, i.e. by the change bound.
ProtocolTranscript run_diffreport_protocol(const CellularAutomaton& ca,
                                           const SplitInstance& inst,
                                           std::int64_t k,
                                           DiffReportDiagnostics* diag = nullptr);

// The mirror-comparison rule: arrows ship bits toward the hyperplane, the
// center tester latches 0 on any mismatch. Prediction needs essentially the
// whole input on both sides.
CellularAutomaton mirror_compare_rule(int dim);

struct FoolingSetVerified {
  std::size_t size = 0;
};
struct FoolingCounterexample {
  std::size_t i = 0, j = 0;
  std::string reason;
};
using FoolingSetResult = std::variant<FoolingSetVerified, FoolingCounterexample>;

// Verifies a candidate fooling set against the oracle: all diagonal values
// equal, and each cross pair differs from the diagonal on at least one side.
FoolingSetResult check_fooling_set(const CellularAutomaton& ca, std::int64_t n,
                                   const std::vector<SplitInstance>& candidates);

} // namespace fca
