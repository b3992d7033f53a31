#pragma once

#include "momentforge/core.hpp"

#include <array>
#include <optional>
#include <string>

namespace momentforge {

/// The 13 query templates the prompt enumerates for the assistant.
enum class TemplateId {
    ObjWhereBeforeAfter, // Where is object X before / after event Y?
    ObjWhere,            // Where is object X?
    PutInX,              // What did I put in X?
    Quantity,            // How many X's? (quantity question)
    WhatXDidIY,          // What X did I Y?
    LocationSeen,        // In what location did I see object X ?
    WhatXIsY,            // What X is Y?
    ObjectState,         // State of an object
    WhereIsMyX,          // Where is my object X?
    WhereDidIPutX,       // Where did I put X?
    InteractDuringX,     // Who did I interact with when I did activity X?
    TalkToInX,           // Who did I talk to in location X?
    InteractWithRoleX,   // When did I interact with person with role X?
};

inline constexpr int kTemplateCount = 13;
inline constexpr std::array<TemplateId, kTemplateCount> kAllTemplates = {
    TemplateId::ObjWhereBeforeAfter, TemplateId::ObjWhere,       TemplateId::PutInX,
    TemplateId::Quantity,            TemplateId::WhatXDidIY,     TemplateId::LocationSeen,
    TemplateId::WhatXIsY,            TemplateId::ObjectState,    TemplateId::WhereIsMyX,
    TemplateId::WhereDidIPutX,       TemplateId::InteractDuringX, TemplateId::TalkToInX,
    TemplateId::InteractWithRoleX,
};

const char* to_string(TemplateId id);

/// The template line as it appears in the prompt, without the leading "- ".
const char* template_line(TemplateId id);

/// Keyword classifier for the 13 templates; first matching pattern wins,
/// nullopt when nothing fires. Deterministic and case-insensitive.
std::optional<TemplateId> match_template(const std::string& query_text);

struct PromptText {
    std::string text;
    std::string model_hint;
    double temperature = 0.0;
};

/// The reformulation prompt with {USER_INPUT} replaced by the query text
/// (first occurrence only, so user text containing the placeholder
/// survives verbatim).
PromptText build_prompt(const Query& query, const std::string& model_hint = "gpt-3.5-turbo",
                        double temperature = 0.0);

/// The raw prompt template, ending "Now reformulate this query {USER_INPUT}:".
const std::string& prompt_template();

} // namespace momentforge
