#pragma once

#include "ltl/node.hpp"
#include "ltl/query.hpp"
#include "ltl/relalg.hpp"
#include "ltl/stream.hpp"
#include "ltl/term.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ltl {

struct Goal {
    enum class Kind {
        unify,            // Lhs = Rhs
        transform,        // transform(Path, Result)
        apply_templates,  // template(Node, Result)
        negation,         // not(Goal)
    };

    Kind kind;
    Term lhs = Term::anonymous();  // unify lhs; apply_templates node
    Term rhs = Term::anonymous();  // unify rhs; transform/apply_templates result
    PathExpr path;                 // transform only
    std::vector<Goal> inner;       // negation: exactly one goal

    static Goal unify_goal(Term l, Term r) { return {Kind::unify, std::move(l), std::move(r), {}, {}}; }
    static Goal transform_goal(PathExpr p, Term result)
    {
        return {Kind::transform, Term::anonymous(), std::move(result), std::move(p), {}};
    }
    static Goal apply_templates_goal(Term n, Term result)
    {
        return {Kind::apply_templates, std::move(n), std::move(result), {}, {}};
    }
    static Goal negation_goal(Goal g) { return {Kind::negation, Term::anonymous(), Term::anonymous(), {}, {std::move(g)}}; }
};

std::string to_string(const Goal& g);

struct Rule {
    Term head = Term::anonymous();
    std::vector<Term> output;
    std::vector<Goal> goals;
    std::size_t line = 0;
};

struct TransformOptions {
    SolutionMode mode = SolutionMode::first_only;
    // Unmatched text nodes are copied to the output, as XSL-T does.
    bool default_copy_text = false;
    // A transform path ending in #k reads the text of the selected element,
    // and '#' on an element reads its text children.
    bool text_coercion = true;
};

struct RuleSet {
    std::vector<Rule> rules;
    FactBase facts;
    TransformOptions options;
};

// Parses template clauses and fact clauses. Throws Error{load} with a source
// position on syntax errors and on output variables that neither the head
// nor a goal can bind.
RuleSet parse_rules(std::string_view source);

// Parses a single term in rule syntax.
Term parse_term(std::string_view text);

// Left-to-right conjunction; each solution extends `theta`. `root` is the
// document root used by lvl steps.
Stream<Substitution> solve_goals(const RuleSet& rs, const std::vector<Goal>& goals, const Substitution& theta,
                                 const Node& root);

// First-rule-wins traversal: a matched node emits its rule's output and is
// not descended into; unmatched elements descend into their children.
Hedge apply_templates(const RuleSet& rs, const Node& n);

struct TransformResult {
    Hedge hedge;
    // True iff the output is exactly one element.
    bool well_formed = false;
};

TransformResult transform_document(const RuleSet& rs, const Node& doc);

}  // namespace ltl
