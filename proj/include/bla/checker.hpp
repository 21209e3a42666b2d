#pragma once

#include <string>
#include <vector>

#include "bla/sim.hpp"

namespace bla {

// Property names check_all emits for the given algorithm, in report order.
std::vector<std::string> checker_properties(AlgoKind a);

// Runs every check that applies to the transcript's algorithm.
std::vector<Verdict> check_all(const Transcript& tr);

// Agreement-level checks, all algorithms.
Verdict check_comparability(const Transcript& tr);
Verdict check_downward(const Transcript& tr);
Verdict check_upward(const Transcript& tr);
Verdict check_at_most_one(const Transcript& tr);
Verdict check_round_bound(const Transcript& tr);
Verdict check_message_bound(const Transcript& tr);
Verdict check_output_present(const Transcript& tr);

// Early-stopping algorithm, per-round.
Verdict check_value_in_safe_lattice(const Transcript& tr);
Verdict check_value_monotone(const Transcript& tr);
Verdict check_safe_lattice_shrinks(const Transcript& tr);
Verdict check_bad_set_sound(const Transcript& tr);
Verdict check_bad_ignored(const Transcript& tr);
Verdict check_decide_within_two(const Transcript& tr);

// Group-halving algorithm, per-iteration.
Verdict check_group_safe_nesting(const Transcript& tr);
Verdict check_slave_values_dominate(const Transcript& tr);
Verdict check_value_sets_nested(const Transcript& tr);

// Classifier algorithm, per-iteration.
Verdict check_classifier_containment(const Transcript& tr);
Verdict check_classifier_windows(const Transcript& tr);
Verdict check_same_group_same_values(const Transcript& tr);
Verdict check_label_whitelist(const Transcript& tr);

// Shared by both set-broadcast algorithms.
Verdict check_correct_value_persists(const Transcript& tr);
Verdict check_input_in_value_set(const Transcript& tr);

}  // namespace bla
