#pragma once

#include <map>
#include <string>

namespace vqe {

// The shipped prompt templates. Templates are data, not code: every one can
// be overridden per deployment through the config's prompt map, as long as
// the replacement keeps the named {placeholders} it needs.
//
// Placeholders by template:
//   tool_selection:   {tool_roster} {text}
//   initial_answer:   {text} {context_section}
//   clarification:    {text} {answer} {context}
//   eval_report:      {text} {context} {initial_answer}
//   reflect_*:        {text} {initial_answer} {report}
//   meta_aggregation: {text} {initial_answer} {answer_conservative}
//                     {answer_neutral} {answer_aggressive} {conf_conservative}
//                     {conf_neutral} {conf_aggressive}
struct PromptSet {
    std::string version = "1";
    std::string tool_selection;
    std::string initial_answer;
    std::string clarification;
    std::string eval_report;
    std::string reflect_conservative;
    std::string reflect_neutral;
    std::string reflect_aggressive;
    std::string meta_aggregation;

    static PromptSet defaults();

    // Replaces the named templates; unknown names are an InvalidConfig error.
    void apply_overrides(const std::map<std::string, std::string>& by_name);
};

// Substitutes every "{key}" occurrence for each variable. Literal braces in
// the template (JSON examples and such) pass through untouched.
std::string render_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& vars);

}  // namespace vqe
