#pragma once

#include <string>
#include <vector>

namespace momentforge {

/// Temporal relation of an instruction step to the previous step's result.
enum class StepRelation { None, After, Before };

const char* to_string(StepRelation r);
StepRelation relation_from_string(const std::string& s);

struct InstructionStep {
    std::string description;
    StepRelation relation = StepRelation::None;
};

/// An ordered list of "find the moment ..." directives. The first step
/// never carries a relation; later steps may be anchored AFTER or BEFORE
/// the previous step's localized interval.
struct InstructionSequence {
    std::vector<InstructionStep> steps;
    // Set when the source text could not be parsed and the sequence is the
    // raw text as a single step.
    bool fallback = false;
};

} // namespace momentforge
