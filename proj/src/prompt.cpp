#include "momentforge/prompt.hpp"

#include "text_util.hpp"

#include <stdexcept>

namespace momentforge {

using detail::contains_ci;
using detail::starts_with_ci;
using detail::to_lower;

const char* to_string(TemplateId id) {
    switch (id) {
        case TemplateId::ObjWhereBeforeAfter: return "OBJ_WHERE_BEFORE_AFTER";
        case TemplateId::ObjWhere: return "OBJ_WHERE";
        case TemplateId::PutInX: return "PUT_IN_X";
        case TemplateId::Quantity: return "QUANTITY";
        case TemplateId::WhatXDidIY: return "WHAT_X_DID_I_Y";
        case TemplateId::LocationSeen: return "LOCATION_SEEN";
        case TemplateId::WhatXIsY: return "WHAT_X_IS_Y";
        case TemplateId::ObjectState: return "OBJECT_STATE";
        case TemplateId::WhereIsMyX: return "WHERE_IS_MY_X";
        case TemplateId::WhereDidIPutX: return "WHERE_DID_I_PUT_X";
        case TemplateId::InteractDuringX: return "INTERACT_DURING_X";
        case TemplateId::TalkToInX: return "TALK_TO_IN_X";
        case TemplateId::InteractWithRoleX: return "INTERACT_WITH_ROLE_X";
    }
    return "UNKNOWN";
}

const char* template_line(TemplateId id) {
    switch (id) {
        case TemplateId::ObjWhereBeforeAfter: return "Where is object X before / after event Y?";
        case TemplateId::ObjWhere: return "Where is object X?";
        case TemplateId::PutInX: return "What did I put in X?";
        case TemplateId::Quantity: return "How many X's? (quantity question)";
        case TemplateId::WhatXDidIY: return "What X did I Y?";
        case TemplateId::LocationSeen: return "In what location did I see object X ?";
        case TemplateId::WhatXIsY: return "What X is Y?";
        case TemplateId::ObjectState: return "State of an object";
        case TemplateId::WhereIsMyX: return "Where is my object X?";
        case TemplateId::WhereDidIPutX: return "Where did I put X?";
        case TemplateId::InteractDuringX: return "Who did I interact with when I did activity X?";
        case TemplateId::TalkToInX: return "Who did I talk to in location X?";
        case TemplateId::InteractWithRoleX: return "When did I interact with person with role X?";
    }
    return "";
}

std::optional<TemplateId> match_template(const std::string& query_text) {
    const std::string q = to_lower(query_text);
    const bool ordered = q.find("after") != std::string::npos ||
                         q.find("before") != std::string::npos;

    if (starts_with_ci(q, "how many")) return TemplateId::Quantity;
    if (q.find("where did i put") != std::string::npos) return TemplateId::WhereDidIPutX;
    if (q.find("who did i talk to") != std::string::npos) return TemplateId::TalkToInX;
    if (q.find("where is my") != std::string::npos) return TemplateId::WhereIsMyX;
    if (q.find("where is") != std::string::npos) {
        return ordered ? TemplateId::ObjWhereBeforeAfter : TemplateId::ObjWhere;
    }
    if (q.find("what did i put") != std::string::npos) return TemplateId::PutInX;
    if (q.find("in what location") != std::string::npos) return TemplateId::LocationSeen;
    if (q.find("who did i interact") != std::string::npos) return TemplateId::InteractDuringX;
    if (q.find("when did i interact") != std::string::npos) return TemplateId::InteractWithRoleX;
    if (q.find("did i") != std::string::npos && ordered) return TemplateId::ObjectState;
    if (starts_with_ci(q, "what")) {
        return q.find("did i") != std::string::npos ? TemplateId::WhatXDidIY
                                                    : TemplateId::WhatXIsY;
    }
    return std::nullopt;
}

const std::string& prompt_template() {
    static const std::string text = [] {
        std::string t;
        t += "You are Eva, a super intelligent assistant that help users locate moments in "
             "videos via natural language queries.\n\n";
        t += "You are:\n";
        t += "- helpful and friendly\n";
        t += "- not able to directly access the video's content\n";
        t += "- decompose a complex event query into a series of logically coherent actions\n";
        t += "- good at understanding user's intent and extract the core steps from the query "
             "in order to answer the user's question\n\n";
        t += "You can use an external tool named Locator, which is able to locate moments in "
             "videos given detailed natural language queries.\n\n";
        t += "The user will ask a question about objects, places, and people in an ego-centric "
             "video, and the key to answer the question is to first locate relevant moments "
             "given the query.\n\n";
        t += "Your goal is to reformulate the query into a series of instructions for the "
             "Locator.\n\n";
        t += "There are some templates for user's query as following:\n";
        for (const TemplateId id : kAllTemplates) {
            t += "- ";
            t += template_line(id);
            t += "\n";
        }
        t += "\n";
        t += "Here are some examples:\n";
        t += "Example 1:\n";
        t += "query: What did I sprinkle on the cooking pan?\n";
        t += "output: find the moment when I sprinkled something on the cooking pan.\n";
        t += "Example 2:\n";
        t += "query: Did I turn off the cooker after I fried the meat?\n";
        t += "output: find the moment when I fried the meat, next find the moment after this "
             "with the cooker (I may turn off the cooker).\n\n";
        t += "Now reformulate this query {USER_INPUT}:";
        return t;
    }();
    return text;
}

PromptText build_prompt(const Query& query, const std::string& model_hint, double temperature) {
    if (query.text.empty()) throw std::invalid_argument("build_prompt: empty query text");
    if (!(temperature >= 0.0 && temperature <= 2.0)) {
        throw std::invalid_argument("build_prompt: temperature must be in [0, 2]");
    }
    PromptText prompt;
    prompt.model_hint = model_hint;
    prompt.temperature = temperature;
    prompt.text = prompt_template();
    const std::string placeholder = "{USER_INPUT}";
    const size_t pos = prompt.text.find(placeholder);
    prompt.text.replace(pos, placeholder.size(), query.text);
    return prompt;
}

} // namespace momentforge
