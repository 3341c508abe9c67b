#pragma once

// Prompt assembly from external text templates with {{name}} placeholders.
// The few-shot builder renders an instruction header, one exemplar per
// training row in dataset order, then the unscored target; with zero rows it
// falls back to the single-value zero-shot prompt.

#include <map>
#include <string>

#include "autoparl/backends.hpp"
#include "autoparl/dataset.hpp"
#include "autoparl/errors.hpp"
#include "autoparl/types.hpp"

namespace autoparl {

// Substitutes every {{name}} placeholder; an unknown name is a schema error.
inline std::string render_template(const std::string& tmpl,
                                   const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        const std::size_t open = tmpl.find("{{", i);
        if (open == std::string::npos) {
            out.append(tmpl, i, std::string::npos);
            break;
        }
        const std::size_t close = tmpl.find("}}", open + 2);
        if (close == std::string::npos)
            throw Error(ErrorKind::schema, "unterminated placeholder in template");
        out.append(tmpl, i, open - i);
        const std::string name = tmpl.substr(open + 2, close - open - 2);
        auto it = values.find(name);
        if (it == values.end())
            throw Error(ErrorKind::schema, "unknown template placeholder '" + name + "'");
        out += it->second;
        i = close + 2;
    }
    return out;
}

struct PromptTemplates {
    std::string evaluator_instruction;   // uses {{stance}}
    std::string evaluator_exemplar;      // uses {{question}}, {{answer}}, {{stance}}, {{score}}
    std::string evaluator_target;        // uses {{question}}, {{answer}}, {{stance}}
    std::string evaluator_single_value;  // uses {{question}}, {{answer}}
    std::string generator;               // uses {{question}}, {{stance}}
    std::string modifier_any;            // uses {{question}}, {{answer}}, {{stance}}
    std::string modifier_amend;          // uses {{question}}, {{answer}}, {{stance}}

    static PromptTemplates load(const std::string& dir) {
        PromptTemplates t;
        t.evaluator_instruction = detail::read_file(dir + "/evaluator_instruction.txt");
        t.evaluator_exemplar = detail::read_file(dir + "/evaluator_exemplar.txt");
        t.evaluator_target = detail::read_file(dir + "/evaluator_target.txt");
        t.evaluator_single_value = detail::read_file(dir + "/evaluator_single_value.txt");
        t.generator = detail::read_file(dir + "/generator.txt");
        t.modifier_any = detail::read_file(dir + "/modifier_any.txt");
        t.modifier_amend = detail::read_file(dir + "/modifier_amend.txt");
        return t;
    }
};

inline std::string build_fewshot_prompt(const Dataset& training, const std::string& stance,
                                        const Question& question, const std::string& answer,
                                        const PromptTemplates& templates) {
    if (training.rows.empty())
        return render_template(templates.evaluator_single_value,
                               {{"question", question.text}, {"answer", answer}});
    const int col = stance_column(training.stances, stance);
    if (col < 0)
        throw Error(ErrorKind::schema,
                    "training rows have no stance column '" + stance + "'");
    std::string prompt =
        render_template(templates.evaluator_instruction, {{"stance", stance}});
    prompt += "\n\n";
    for (const ScoredRow& row : training.rows) {
        prompt += render_template(templates.evaluator_exemplar,
                                  {{"question", row.question},
                                   {"answer", row.answer},
                                   {"stance", stance},
                                   {"score", format_score(row.scores[static_cast<std::size_t>(col)])}});
        prompt += "\n\n";
    }
    prompt += render_template(templates.evaluator_target, {{"question", question.text},
                                                           {"answer", answer},
                                                           {"stance", stance}});
    return prompt;
}

}  // namespace autoparl
