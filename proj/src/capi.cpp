#include "ltl/ltl.h"

#include "ltl/error.hpp"
#include "ltl/metrics.hpp"
#include "ltl/node.hpp"
#include "ltl/query.hpp"
#include "ltl/relalg.hpp"
#include "ltl/rules.hpp"
#include "ltl/xml_io.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

struct ltl_document {
    ltl::Node node;
};

struct ltl_ruleset {
    ltl::RuleSet rules;
};

struct ltl_results {
    std::vector<ltl_result_kind> kinds;
    std::vector<std::string> texts;
};

namespace {

struct LastError {
    std::string message;
    std::size_t line = 0;
    std::size_t column = 0;
};

thread_local LastError last_error;

ltl_status status_of(ltl::ErrorKind kind)
{
    using ltl::ErrorKind;
    switch (kind) {
    case ErrorKind::parse: return LTL_ERR_PARSE;
    case ErrorKind::load: return LTL_ERR_LOAD;
    case ErrorKind::duplicate_attribute: return LTL_ERR_DUPLICATE_ATTRIBUTE;
    case ErrorKind::sentinel_collision: return LTL_ERR_SENTINEL_COLLISION;
    case ErrorKind::decode: return LTL_ERR_DECODE;
    case ErrorKind::unbound_output: return LTL_ERR_UNBOUND_OUTPUT;
    case ErrorKind::shape: return LTL_ERR_SHAPE;
    case ErrorKind::type_mismatch: return LTL_ERR_TYPE_MISMATCH;
    case ErrorKind::instantiation: return LTL_ERR_INSTANTIATION;
    case ErrorKind::bad_index_path: return LTL_ERR_BAD_INDEX_PATH;
    case ErrorKind::arity: return LTL_ERR_ARITY;
    case ErrorKind::column: return LTL_ERR_COLUMN;
    case ErrorKind::invalid_argument: return LTL_ERR_INVALID_ARGUMENT;
    }
    return LTL_ERR_INTERNAL;
}

ltl_status fail(ltl_status status, std::string message, std::size_t line = 0, std::size_t column = 0)
{
    last_error = {std::move(message), line, column};
    return status;
}

template <class F>
ltl_status guarded(F&& body)
{
    last_error = {};
    try {
        body();
        return LTL_OK;
    } catch (const ltl::Error& e) {
        return fail(status_of(e.kind()), e.what(), e.line(), e.column());
    } catch (const std::bad_alloc&) {
        return fail(LTL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(LTL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(LTL_ERR_INTERNAL, "unknown error");
    }
}

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

ltl::SentinelConfig to_config(const ltl_sentinels* s)
{
    ltl::SentinelConfig cfg;
    if (s) {
        cfg.pi_mark = s->pi_mark;
        cfg.comment_mark = s->comment_mark;
        cfg.attr_mark = s->attr_mark;
    }
    return cfg;
}

void require(bool ok, const char* what)
{
    if (!ok)
        throw ltl::Error(ltl::ErrorKind::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* ltl_version(void) { return "1.0.0"; }

const char* ltl_status_name(ltl_status status)
{
    switch (status) {
    case LTL_OK: return "ok";
    case LTL_ERR_PARSE: return "parse error";
    case LTL_ERR_LOAD: return "load error";
    case LTL_ERR_DUPLICATE_ATTRIBUTE: return "duplicate attribute";
    case LTL_ERR_SENTINEL_COLLISION: return "sentinel collision";
    case LTL_ERR_DECODE: return "decode error";
    case LTL_ERR_UNBOUND_OUTPUT: return "unbound output";
    case LTL_ERR_SHAPE: return "shape error";
    case LTL_ERR_TYPE_MISMATCH: return "type mismatch";
    case LTL_ERR_INSTANTIATION: return "instantiation error";
    case LTL_ERR_BAD_INDEX_PATH: return "bad index path";
    case LTL_ERR_ARITY: return "arity error";
    case LTL_ERR_COLUMN: return "column error";
    case LTL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LTL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ltl_last_error(void) { return last_error.message.c_str(); }
size_t ltl_last_error_line(void) { return last_error.line; }
size_t ltl_last_error_column(void) { return last_error.column; }

void ltl_string_free(char* s) { std::free(s); }

void ltl_sentinels_default(ltl_sentinels* out)
{
    if (!out)
        return;
    ltl::SentinelConfig cfg;
    *out = {cfg.pi_mark, cfg.comment_mark, cfg.attr_mark};
}

ltl_status ltl_sentinels_parse(const char* text, ltl_sentinels* out)
{
    return guarded([&] {
        require(text && out, "null argument");
        std::vector<std::uint32_t> cps;
        std::string s(text);
        std::size_t start = 0;
        while (start <= s.size()) {
            auto comma = s.find(',', start);
            std::string part = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            while (!part.empty() && part.front() == ' ')
                part.erase(part.begin());
            while (!part.empty() && part.back() == ' ')
                part.pop_back();
            if (part.size() > 2 && (part.compare(0, 2, "U+") == 0 || part.compare(0, 2, "0x") == 0))
                part = part.substr(2);
            require(!part.empty() && part.size() <= 6
                        && part.find_first_not_of("0123456789abcdefABCDEF") == std::string::npos,
                    "sentinels are three comma-separated hex code points, e.g. E000,E001,E002");
            cps.push_back(static_cast<std::uint32_t>(std::stoul(part, nullptr, 16)));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
        require(cps.size() == 3, "sentinels are three comma-separated hex code points, e.g. E000,E001,E002");
        ltl::SentinelConfig cfg{cps[0], cps[1], cps[2]};
        cfg.validate();
        *out = {cps[0], cps[1], cps[2]};
    });
}

ltl_status ltl_document_parse(const char* xml, size_t length, ltl_document** out)
{
    return guarded([&] {
        require(out && (xml || length == 0), "null argument");
        *out = nullptr;
        *out = new ltl_document{ltl::parse_xml(std::string_view(xml ? xml : "", length))};
    });
}

void ltl_document_free(ltl_document* doc) { delete doc; }

ltl_status ltl_document_serialize(const ltl_document* doc, int xml_declaration, char** out)
{
    return guarded([&] {
        require(doc && out, "null argument");
        *out = copy_string(ltl::serialize(doc->node, {xml_declaration != 0}));
    });
}

ltl_status ltl_document_canonicalize(const ltl_document* doc, ltl_document** out)
{
    return guarded([&] {
        require(doc && out, "null argument");
        *out = new ltl_document{ltl::canonicalize(doc->node)};
    });
}

ltl_status ltl_document_encode(const ltl_document* doc, const ltl_sentinels* sentinels, ltl_document** out)
{
    return guarded([&] {
        require(doc && out, "null argument");
        *out = new ltl_document{ltl::encode_core(doc->node, to_config(sentinels))};
    });
}

ltl_status ltl_document_decode(const ltl_document* doc, const ltl_sentinels* sentinels, ltl_document** out)
{
    return guarded([&] {
        require(doc && out, "null argument");
        *out = new ltl_document{ltl::decode_core(doc->node, to_config(sentinels))};
    });
}

int ltl_document_equal(const ltl_document* a, const ltl_document* b)
{
    if (!a || !b)
        return 0;
    return a->node == b->node ? 1 : 0;
}

ltl_status ltl_query(const ltl_document* doc, const char* path, ltl_solution_mode mode, ltl_results** out)
{
    return guarded([&] {
        require(doc && path && out, "null argument");
        auto expr = ltl::parse_path(path);
        auto stream = ltl::eval_path(doc->node, expr,
                                     mode == LTL_ALL_SOLUTIONS ? ltl::SolutionMode::all_solutions
                                                               : ltl::SolutionMode::first_only);
        auto results = std::make_unique<ltl_results>();
        while (auto r = stream.next()) {
            results->kinds.push_back(static_cast<ltl_result_kind>(r->index()));
            results->texts.push_back(ltl::result_to_string(*r));
        }
        *out = results.release();
    });
}

size_t ltl_results_count(const ltl_results* results) { return results ? results->texts.size() : 0; }

ltl_result_kind ltl_results_kind(const ltl_results* results, size_t index)
{
    if (!results || index >= results->kinds.size())
        return LTL_RESULT_STRING;
    return results->kinds[index];
}

const char* ltl_results_text(const ltl_results* results, size_t index)
{
    if (!results || index >= results->texts.size())
        return nullptr;
    return results->texts[index].c_str();
}

void ltl_results_free(ltl_results* results) { delete results; }

ltl_status ltl_ruleset_load(const char* source, size_t length, ltl_ruleset** out)
{
    return guarded([&] {
        require(out && (source || length == 0), "null argument");
        *out = nullptr;
        *out = new ltl_ruleset{ltl::parse_rules(std::string_view(source ? source : "", length))};
    });
}

void ltl_ruleset_free(ltl_ruleset* rules) { delete rules; }

size_t ltl_ruleset_rule_count(const ltl_ruleset* rules) { return rules ? rules->rules.rules.size() : 0; }

void ltl_transform_options_init(ltl_transform_options* options)
{
    if (!options)
        return;
    ltl::TransformOptions defaults;
    options->mode = LTL_FIRST_ONLY;
    options->default_copy_text = defaults.default_copy_text ? 1 : 0;
    options->text_coercion = defaults.text_coercion ? 1 : 0;
    options->wrap_root = nullptr;
    options->xml_declaration = 0;
}

ltl_status ltl_transform(const ltl_ruleset* rules, const ltl_document* doc, const ltl_transform_options* options,
                         char** out, int* well_formed)
{
    return guarded([&] {
        require(rules && doc && out, "null argument");
        ltl_transform_options opts;
        ltl_transform_options_init(&opts);
        if (options)
            opts = *options;
        ltl::RuleSet rs = rules->rules;
        rs.options.mode = opts.mode == LTL_ALL_SOLUTIONS ? ltl::SolutionMode::all_solutions
                                                         : ltl::SolutionMode::first_only;
        rs.options.default_copy_text = opts.default_copy_text != 0;
        rs.options.text_coercion = opts.text_coercion != 0;
        auto result = ltl::transform_document(rs, doc->node);
        ltl::SerializeOptions sopts{opts.xml_declaration != 0};
        std::string text;
        if (result.well_formed)
            text = ltl::serialize(result.hedge.front(), sopts);
        else if (opts.wrap_root)
            text = ltl::serialize(ltl::Node::element(opts.wrap_root, {}, result.hedge), sopts);
        else
            text = ltl::serialize(result.hedge, sopts);
        *out = copy_string(text);
        if (well_formed)
            *well_formed = result.well_formed ? 1 : 0;
    });
}

ltl_status ltl_metrics_compute(const char* script, size_t length, ltl_dialect dialect, ltl_metrics* out)
{
    return guarded([&] {
        require(out && (script || length == 0), "null argument");
        auto counts = ltl::count_tokens(std::string_view(script ? script : "", length),
                                        dialect == LTL_DIALECT_XSLT ? ltl::Dialect::xslt : ltl::Dialect::ltl);
        auto r = ltl::compute_metrics(counts);
        *out = {counts.eta1,   counts.eta2,          counts.n1_total, counts.n2_total, r.length,
                r.theoretical_length, r.vocabulary, r.volume,        r.level,         r.abstraction,
                r.length_delta};
    });
}

ltl_status ltl_relalg_eval(const char* facts, size_t length, const char* expression, char** out)
{
    return guarded([&] {
        require(out && expression && (facts || length == 0), "null argument");
        auto rs = ltl::parse_rules(std::string_view(facts ? facts : "", length));
        *out = copy_string(ltl::format_relation(ltl::evaluate(std::string_view(expression), rs.facts)));
    });
}

}  // extern "C"
