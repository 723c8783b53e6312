/*
 * C interface to the LTL XML transformation engine.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an ltl_status; on
 * failure the message and source position of the last error on the calling
 * thread are available through ltl_last_error*(). Strings are UTF-8; strings
 * returned through char** out-parameters are released with ltl_string_free.
 */
#ifndef LTL_LTL_H
#define LTL_LTL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LTL_BUILDING_SHARED)
#    define LTL_API __declspec(dllexport)
#  else
#    define LTL_API __declspec(dllimport)
#  endif
#else
#  define LTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ltl_status {
    LTL_OK = 0,
    LTL_ERR_PARSE = 1,
    LTL_ERR_LOAD = 2,
    LTL_ERR_DUPLICATE_ATTRIBUTE = 3,
    LTL_ERR_SENTINEL_COLLISION = 4,
    LTL_ERR_DECODE = 5,
    LTL_ERR_UNBOUND_OUTPUT = 6,
    LTL_ERR_SHAPE = 7,
    LTL_ERR_TYPE_MISMATCH = 8,
    LTL_ERR_INSTANTIATION = 9,
    LTL_ERR_BAD_INDEX_PATH = 10,
    LTL_ERR_ARITY = 11,
    LTL_ERR_COLUMN = 12,
    LTL_ERR_INVALID_ARGUMENT = 13,
    LTL_ERR_INTERNAL = 99
} ltl_status;

typedef struct ltl_document ltl_document;
typedef struct ltl_ruleset ltl_ruleset;
typedef struct ltl_results ltl_results;

typedef struct ltl_sentinels {
    uint32_t pi_mark;
    uint32_t comment_mark;
    uint32_t attr_mark;
} ltl_sentinels;

typedef enum ltl_solution_mode { LTL_FIRST_ONLY = 0, LTL_ALL_SOLUTIONS = 1 } ltl_solution_mode;

typedef struct ltl_transform_options {
    ltl_solution_mode mode;
    int default_copy_text;
    int text_coercion;
    /* Wraps non-well-formed output in an element of this name; NULL emits the
     * bare hedge. */
    const char* wrap_root;
    int xml_declaration;
} ltl_transform_options;

typedef enum ltl_result_kind {
    LTL_RESULT_NODE = 0,
    LTL_RESULT_STRING = 1,
    LTL_RESULT_NUMBER = 2,
    LTL_RESULT_INDEX_PATH = 3
} ltl_result_kind;

typedef enum ltl_dialect { LTL_DIALECT_LTL = 0, LTL_DIALECT_XSLT = 1 } ltl_dialect;

typedef struct ltl_metrics {
    size_t eta1;
    size_t eta2;
    size_t n1_total;
    size_t n2_total;
    double length;
    double theoretical_length;
    double vocabulary;
    double volume;
    double level;
    double abstraction;
    double length_delta;
} ltl_metrics;

LTL_API const char* ltl_version(void);
LTL_API const char* ltl_status_name(ltl_status status);

LTL_API const char* ltl_last_error(void);
LTL_API size_t ltl_last_error_line(void);
LTL_API size_t ltl_last_error_column(void);

LTL_API void ltl_string_free(char* s);

LTL_API void ltl_sentinels_default(ltl_sentinels* out);
/* Parses "E000,E001,E002" (hex code points). */
LTL_API ltl_status ltl_sentinels_parse(const char* text, ltl_sentinels* out);

LTL_API ltl_status ltl_document_parse(const char* xml, size_t length, ltl_document** out);
LTL_API void ltl_document_free(ltl_document* doc);
LTL_API ltl_status ltl_document_serialize(const ltl_document* doc, int xml_declaration, char** out);
LTL_API ltl_status ltl_document_canonicalize(const ltl_document* doc, ltl_document** out);
LTL_API ltl_status ltl_document_encode(const ltl_document* doc, const ltl_sentinels* sentinels, ltl_document** out);
LTL_API ltl_status ltl_document_decode(const ltl_document* doc, const ltl_sentinels* sentinels, ltl_document** out);
LTL_API int ltl_document_equal(const ltl_document* a, const ltl_document* b);

/* Evaluates a path expression from the document root. */
LTL_API ltl_status ltl_query(const ltl_document* doc, const char* path, ltl_solution_mode mode,
                             ltl_results** out);
LTL_API size_t ltl_results_count(const ltl_results* results);
LTL_API ltl_result_kind ltl_results_kind(const ltl_results* results, size_t index);
/* Nodes are serialized, values printed; NULL when index is out of range. The
 * pointer stays valid until ltl_results_free. */
LTL_API const char* ltl_results_text(const ltl_results* results, size_t index);
LTL_API void ltl_results_free(ltl_results* results);

LTL_API ltl_status ltl_ruleset_load(const char* source, size_t length, ltl_ruleset** out);
LTL_API void ltl_ruleset_free(ltl_ruleset* rules);
LTL_API size_t ltl_ruleset_rule_count(const ltl_ruleset* rules);

LTL_API void ltl_transform_options_init(ltl_transform_options* options);
/* *well_formed is set to 1 when the output is exactly one element. */
LTL_API ltl_status ltl_transform(const ltl_ruleset* rules, const ltl_document* doc,
                                 const ltl_transform_options* options, char** out, int* well_formed);

LTL_API ltl_status ltl_metrics_compute(const char* script, size_t length, ltl_dialect dialect, ltl_metrics* out);

/* Evaluates a relational operator expression over the fact clauses of
 * `facts`; the result is one "name(v,...)." line per tuple. */
LTL_API ltl_status ltl_relalg_eval(const char* facts, size_t length, const char* expression, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LTL_LTL_H */
