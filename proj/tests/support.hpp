#pragma once

// Shared generators and brute-force oracles for the test suites.

#include "ltl/node.hpp"
#include "ltl/term.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace ltl::testing {

class DocumentGenerator {
public:
    explicit DocumentGenerator(std::uint32_t seed, int max_depth = 6, int max_nodes = 40)
        : rng_(seed), max_depth_(max_depth), max_nodes_(max_nodes)
    {
    }

    Node document()
    {
        budget_ = max_nodes_ - 1;
        return element(1);
    }

    // Only element and text nodes, no attributes.
    Node core_document()
    {
        core_only_ = true;
        Node n = document();
        core_only_ = false;
        return n;
    }

    std::mt19937& rng() { return rng_; }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::string name()
    {
        static const std::vector<std::string> names{"a", "b", "c", "p", "q", "item", "x:y", "d-e", "top"};
        return names[static_cast<std::size_t>(pick(0, static_cast<int>(names.size()) - 1))];
    }

    std::string text(const char* alphabet_set = nullptr)
    {
        static const std::vector<std::string> alphabet{"a", "b", "z", " ", "<", ">", "&", "\"", "'", "\xC3\xA9",
                                                       "\xE6\x97\xA5", "\n", "\t", "1", "]]>", ";"};
        static const std::vector<std::string> safe{"a", "b", "z", " ", "1", "\xC3\xA9", "=", ";"};
        const auto& chars = alphabet_set ? safe : alphabet;
        std::string out;
        int len = pick(1, 6);
        for (int i = 0; i < len; ++i)
            out += chars[static_cast<std::size_t>(pick(0, static_cast<int>(chars.size()) - 1))];
        return out;
    }

    Node element(int depth)
    {
        std::vector<Attribute> attrs;
        if (!core_only_) {
            static const std::vector<std::string> attr_names{"id", "b", "c", "z", "href", "lang"};
            std::vector<std::string> pool = attr_names;
            std::shuffle(pool.begin(), pool.end(), rng_);
            int n = pick(0, 3);
            for (int i = 0; i < n; ++i)
                attrs.push_back({pool[static_cast<std::size_t>(i)], pick(0, 4) == 0 ? std::string() : text()});
        }
        Hedge kids;
        if (depth < max_depth_) {
            int n = pick(0, 4);
            bool last_text = false;
            for (int i = 0; i < n && budget_ > 0; ++i) {
                --budget_;
                int roll = pick(0, 9);
                if (core_only_ && roll >= 7)
                    roll = 5;
                if (roll >= 5 && roll < 7 && last_text)
                    roll = 0;
                last_text = roll >= 5 && roll < 7;
                if (roll < 5)
                    kids.push_back(element(depth + 1));
                else if (roll < 7)
                    kids.push_back(Node::text(text()));
                else if (roll < 8)
                    kids.push_back(Node::pi(name() + (pick(0, 1) ? " " + text("safe") : std::string())));
                else
                    kids.push_back(Node::comment(text("safe")));
            }
        }
        return Node::element(name(), std::move(attrs), std::move(kids));
    }

private:
    std::mt19937 rng_;
    int max_depth_;
    int max_nodes_;
    int budget_ = 0;
    bool core_only_ = false;
};

// Recursive concatenation: node, then the pre-order of each child.
inline void preorder_oracle(const Node& n, std::vector<Node>& out)
{
    out.push_back(n);
    for (const auto& c : n.children())
        preorder_oracle(c, out);
}

inline std::vector<Node> preorder_oracle(const Node& n)
{
    std::vector<Node> out;
    preorder_oracle(n, out);
    return out;
}

// Every (index path, node) pair of the tree, in document order.
inline void all_paths(const Node& n, std::vector<std::size_t>& prefix,
                      std::vector<std::pair<std::vector<std::size_t>, Node>>& out)
{
    out.emplace_back(prefix, n);
    for (std::size_t i = 0; i < n.children().size(); ++i) {
        prefix.push_back(i + 1);
        all_paths(n.children()[i], prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<std::pair<std::vector<std::size_t>, Node>> all_paths(const Node& n)
{
    std::vector<std::pair<std::vector<std::size_t>, Node>> out;
    std::vector<std::size_t> prefix;
    all_paths(n, prefix, out);
    return out;
}

class TermGenerator {
public:
    explicit TermGenerator(std::uint32_t seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Term term(int depth)
    {
        int roll = pick(0, depth <= 1 ? 5 : 8);
        switch (roll) {
        case 0:
        case 1: {
            static const char* vars[] = {"X", "Y", "Z", "W"};
            return Term::var(vars[pick(0, 3)]);
        }
        case 2: return Term::anonymous();
        case 3: {
            static const char* atoms[] = {"a", "b", "element"};
            return Term::atom(atoms[pick(0, 2)]);
        }
        case 4: return Term::str(pick(0, 1) ? "s" : "t");
        case 5: return Term::integer(pick(0, 2));
        case 6:
        case 7: {
            static const char* functors[] = {"f", "g", "text"};
            std::vector<Term> args;
            int n = pick(1, 3);
            for (int i = 0; i < n; ++i)
                args.push_back(term(depth - 1));
            return Term::compound(functors[pick(0, 2)], std::move(args));
        }
        default: {
            std::vector<Term> items;
            int n = pick(0, 2);
            for (int i = 0; i < n; ++i)
                items.push_back(term(depth - 1));
            return Term::seq(std::move(items));
        }
        }
    }

    // A ground instance of a term: each variable replaced consistently.
    Term instance(const Term& t, std::map<std::string, Term>& chosen)
    {
        switch (t.kind()) {
        case TermKind::var: {
            auto it = chosen.find(t.text());
            if (it == chosen.end())
                it = chosen.emplace(t.text(), ground(2)).first;
            return it->second;
        }
        case TermKind::anonymous: return ground(2);
        case TermKind::compound:
        case TermKind::seq: {
            std::vector<Term> args;
            for (const auto& a : t.args())
                args.push_back(instance(a, chosen));
            return t.kind() == TermKind::seq ? Term::seq(std::move(args)) : Term::compound(t.text(), std::move(args));
        }
        default: return t;
        }
    }

    Term ground(int depth)
    {
        for (;;) {
            Term t = term(depth);
            if (t.is_ground())
                return t;
        }
    }

private:
    std::mt19937 rng_;
};

}  // namespace ltl::testing
