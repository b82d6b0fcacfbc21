#ifndef RICHWORDS_H
#define RICHWORDS_H

/* Generated by cbindgen from richwords-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum RwStatus {
  // Operation succeeded.
  RW_STATUS_OK = 0,
  // A required pointer argument was null.
  RW_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  RW_STATUS_INVALID_UTF8 = 2,
  // Malformed word or morphism text.
  RW_STATUS_PARSE_ERROR = 3,
  // Input violates the operation's precondition.
  RW_STATUS_PRECONDITION_ERROR = 4,
  // Internal consistency failure; indicates a library bug.
  RW_STATUS_INTERNAL_ERROR = 5,
} RwStatus;

// Opaque handle to a morphism.
typedef struct RwMorphism RwMorphism;

// Opaque handle to an immutable word.
typedef struct RwWord RwWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Description of the most recent failure on this thread, or null if none.
// The caller owns the returned string and must free it with
// `rw_string_free`.
char *rw_last_error_message(void);

// Frees a string allocated by this library. Null is ignored.
//
// # Safety
// `s` must have been returned by a function of this library and not yet
// freed.
void rw_string_free(char *s);

// Parses a word from UTF-8 text. On success writes a handle that must be
// freed with `rw_word_free`.
//
// # Safety
// `text` must point to a nul-terminated string; `out` must be valid for a
// single pointer write.
enum RwStatus rw_word_parse(const char *text, struct RwWord **out);

// Frees a word handle. Null is ignored.
//
// # Safety
// `word` must have been returned by this library and not yet freed.
void rw_word_free(struct RwWord *word);

// Number of letters in the word.
//
// # Safety
// `word` must be a live handle; `out` must be valid for a write.
enum RwStatus rw_word_len(const struct RwWord *word, size_t *out);

// Palindromic defect of the word.
//
// # Safety
// `word` must be a live handle; `out` must be valid for a write.
enum RwStatus rw_word_defect(const struct RwWord *word, uint64_t *out);

// Whether the word has zero palindromic defect.
//
// # Safety
// `word` must be a live handle; `out` must be valid for a write.
enum RwStatus rw_word_is_rich(const struct RwWord *word, bool *out);

// Full defect report as JSON: word, length, palindrome count, defect, and
// the defect of every prefix.
//
// # Safety
// `word` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_word_defect_report_json(const struct RwWord *word, char **out);

// Longest palindromic suffix. Rejects the empty word.
//
// # Safety
// `word` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_word_lps(const struct RwWord *word, char **out);

// Longest palindromic prefix. Rejects the empty word.
//
// # Safety
// `word` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_word_lpp(const struct RwWord *word, char **out);

// First incompatibility condition on a pair of words.
//
// # Safety
// `u` and `v` must be live handles; `out` must be valid for a write.
enum RwStatus rw_check_e1(const struct RwWord *u, const struct RwWord *v, bool *out);

// Second incompatibility condition on a pair of words.
//
// # Safety
// `u` and `v` must be live handles; `out` must be valid for a write.
enum RwStatus rw_check_e2(const struct RwWord *u, const struct RwWord *v, bool *out);

// Extracts an incompatible factor pair from a non-rich word, as JSON with
// fields u, v, r, p, q, z. Rich input is a precondition error.
//
// # Safety
// `word` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_witness_json(const struct RwWord *word, char **out);

// Four-factor witness for a word over at most two letters. Writes the
// witness, or null when the word is rich and no witness exists.
//
// # Safety
// `word` must be a live handle; `out` receives a string (or null) to free
// with `rw_string_free`.
enum RwStatus rw_binary_nonrich_witness(const struct RwWord *word, char **out);

// Compatibility verdict for two rich words as JSON with fields status,
// witness, bound.
//
// # Safety
// `u` and `v` must be live handles; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_compat_search_json(const struct RwWord *u,
                                    const struct RwWord *v,
                                    size_t max_len,
                                    char **out);

// Number of rich words of length exactly `n` over `d` letters.
//
// # Safety
// `out` must be valid for a write.
enum RwStatus rw_count_rich(size_t d, size_t n, uint64_t *out);

// Number of distinct words of length `n` produced by the two-letter block
// construction.
//
// # Safety
// `out` must be valid for a write.
enum RwStatus rw_gss_count(size_t n, uint64_t *out);

// Factorization of a rich word into its unioccurrent palindromic suffixes,
// as a JSON array of strings. Non-rich input is a precondition error.
//
// # Safety
// `word` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_ups_factorization_json(const struct RwWord *word, char **out);

// Identity partial sums of the periodic word `period^infinity`, as JSON with
// fields partial_sums, defect_estimate, saturated.
//
// # Safety
// `period` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_periodic_identity_sums_json(const struct RwWord *period, size_t k_max, char **out);

// Minimal non-rich words up to length `max_n` over `d` letters, one orbit
// representative each, as a JSON array of strings.
//
// # Safety
// `out` receives a string to free with `rw_string_free`.
enum RwStatus rw_minimal_nonrich_json(size_t d, size_t max_n, char **out);

// Parses a morphism from text like `a->abab;b->aab`. On success writes a
// handle that must be freed with `rw_morphism_free`.
//
// # Safety
// `text` must point to a nul-terminated string; `out` must be valid for a
// single pointer write.
enum RwStatus rw_morphism_parse(const char *text, struct RwMorphism **out);

// Frees a morphism handle. Null is ignored.
//
// # Safety
// `morphism` must have been returned by this library and not yet freed.
void rw_morphism_free(struct RwMorphism *morphism);

// Applies the morphism to a word, producing a new word handle.
//
// # Safety
// `morphism` and `word` must be live handles; `out` must be valid for a
// single pointer write.
enum RwStatus rw_morphism_apply(const struct RwMorphism *morphism,
                                const struct RwWord *word,
                                struct RwWord **out);

// Whether some power of the morphism maps every letter to a word containing
// every letter.
//
// # Safety
// `morphism` must be a live handle; `out` must be valid for a write.
enum RwStatus rw_morphism_is_primitive(const struct RwMorphism *morphism, bool *out);

// Prefix of the fixed point grown from `seed` (a Unicode scalar value),
// truncated to exactly `min_len` letters, as a word handle.
//
// # Safety
// `morphism` must be a live handle; `out` must be valid for a single
// pointer write.
enum RwStatus rw_morphism_fixed_point_prefix(const struct RwMorphism *morphism,
                                             uint32_t seed,
                                             size_t min_len,
                                             struct RwWord **out);

// Renders a word back to UTF-8 text.
//
// # Safety
// `word` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_word_to_string(const struct RwWord *word, char **out);

// Defect profile of the fixed point grown from `seed`, as JSON with fields
// morphism, seed, checkpoints, verdict.
//
// # Safety
// `morphism` must be a live handle; `out` receives a string to free with
// `rw_string_free`.
enum RwStatus rw_morphism_defect_profile_json(const struct RwMorphism *morphism,
                                              uint32_t seed,
                                              size_t max_len,
                                              size_t checkpoints,
                                              char **out);

// Conjugate admitting a palindromic image decomposition, as JSON with fields
// morphism, class_p, conjugator; writes null when no conjugate qualifies.
//
// # Safety
// `morphism` must be a live handle; `out` receives a string (or null) to
// free with `rw_string_free`.
enum RwStatus rw_morphism_class_p_prime_json(const struct RwMorphism *morphism, char **out);

// Conjugate pair witnessing markedness, as JSON with fields phi1, phi2 and
// their certificates; writes null when the morphism is not marked.
//
// # Safety
// `morphism` must be a live handle; `out` receives a string (or null) to
// free with `rw_string_free`.
enum RwStatus rw_morphism_marked_pair_json(const struct RwMorphism *morphism, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RICHWORDS_H */
