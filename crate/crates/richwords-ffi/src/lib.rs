//! C ABI over the richwords library.
//!
//! Conventions: objects cross the boundary as opaque handles created by
//! `rw_*_parse` and released by the matching `rw_*_free`; every fallible call
//! returns an [`RwStatus`] and writes its result through an out-pointer;
//! structured results are returned as JSON strings allocated by this library
//! and released with [`rw_string_free`]. `rw_last_error_message` retrieves a
//! description of the most recent failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use richwords::morphism::Morphism;
use richwords::{palindrome, richness, Error, Word};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RwStatus {
    /// Operation succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Malformed word or morphism text.
    ParseError = 3,
    /// Input violates the operation's precondition.
    PreconditionError = 4,
    /// Internal consistency failure; indicates a library bug.
    InternalError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a nul byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(e: &Error) -> RwStatus {
    match e {
        Error::Parse(_) => RwStatus::ParseError,
        Error::Precondition(_) | Error::NotRich(_) | Error::RichInput(_) => {
            RwStatus::PreconditionError
        }
        Error::Internal(_) => RwStatus::InternalError,
    }
}

fn fail(e: Error) -> RwStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// Opaque handle to an immutable word.
pub struct RwWord(Word);

/// Opaque handle to a morphism.
pub struct RwMorphism(Morphism);

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RwStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(RwStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        RwStatus::InvalidUtf8
    })
}

unsafe fn out_ptr<'a, T>(ptr: *mut T) -> Result<&'a mut T, RwStatus> {
    if ptr.is_null() {
        set_error("null out-pointer".into());
        return Err(RwStatus::NullPointer);
    }
    Ok(&mut *ptr)
}

unsafe fn deref_word<'a>(ptr: *const RwWord) -> Result<&'a Word, RwStatus> {
    if ptr.is_null() {
        set_error("null word handle".into());
        return Err(RwStatus::NullPointer);
    }
    Ok(&(*ptr).0)
}

unsafe fn deref_morphism<'a>(ptr: *const RwMorphism) -> Result<&'a Morphism, RwStatus> {
    if ptr.is_null() {
        set_error("null morphism handle".into());
        return Err(RwStatus::NullPointer);
    }
    Ok(&(*ptr).0)
}

fn string_out(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

macro_rules! ffi_try {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! lib_try {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail(e),
        }
    };
}

/// Description of the most recent failure on this thread, or null if none.
/// The caller owns the returned string and must free it with
/// `rw_string_free`.
#[no_mangle]
pub extern "C" fn rw_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Frees a string allocated by this library. Null is ignored.
///
/// # Safety
/// `s` must have been returned by a function of this library and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn rw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word from UTF-8 text. On success writes a handle that must be
/// freed with `rw_word_free`.
///
/// # Safety
/// `text` must point to a nul-terminated string; `out` must be valid for a
/// single pointer write.
#[no_mangle]
pub unsafe extern "C" fn rw_word_parse(text: *const c_char, out: *mut *mut RwWord) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let text = ffi_try!(read_str(text));
    let word: Word = lib_try!(text.parse());
    *out = Box::into_raw(Box::new(RwWord(word)));
    RwStatus::Ok
}

/// Frees a word handle. Null is ignored.
///
/// # Safety
/// `word` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rw_word_free(word: *mut RwWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Number of letters in the word.
///
/// # Safety
/// `word` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_word_len(word: *const RwWord, out: *mut usize) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = ffi_try!(deref_word(word)).len();
    RwStatus::Ok
}

/// Palindromic defect of the word.
///
/// # Safety
/// `word` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_word_defect(word: *const RwWord, out: *mut u64) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = palindrome::defect(ffi_try!(deref_word(word))).defect;
    RwStatus::Ok
}

/// Whether the word has zero palindromic defect.
///
/// # Safety
/// `word` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_word_is_rich(word: *const RwWord, out: *mut bool) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = palindrome::is_rich(ffi_try!(deref_word(word)));
    RwStatus::Ok
}

/// Full defect report as JSON: word, length, palindrome count, defect, and
/// the defect of every prefix.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_word_defect_report_json(
    word: *const RwWord,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let report = palindrome::defect(ffi_try!(deref_word(word)));
    *out = string_out(serde_json::to_string(&report).expect("serializable"));
    RwStatus::Ok
}

/// Longest palindromic suffix. Rejects the empty word.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_word_lps(word: *const RwWord, out: *mut *mut c_char) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let lps = lib_try!(palindrome::lps(ffi_try!(deref_word(word))));
    *out = string_out(lps.to_string());
    RwStatus::Ok
}

/// Longest palindromic prefix. Rejects the empty word.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_word_lpp(word: *const RwWord, out: *mut *mut c_char) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let lpp = lib_try!(palindrome::lpp(ffi_try!(deref_word(word))));
    *out = string_out(lpp.to_string());
    RwStatus::Ok
}

/// First incompatibility condition on a pair of words.
///
/// # Safety
/// `u` and `v` must be live handles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_check_e1(
    u: *const RwWord,
    v: *const RwWord,
    out: *mut bool,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = richness::check_e1(ffi_try!(deref_word(u)), ffi_try!(deref_word(v)));
    RwStatus::Ok
}

/// Second incompatibility condition on a pair of words.
///
/// # Safety
/// `u` and `v` must be live handles; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_check_e2(
    u: *const RwWord,
    v: *const RwWord,
    out: *mut bool,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = richness::check_e2(ffi_try!(deref_word(u)), ffi_try!(deref_word(v)));
    RwStatus::Ok
}

/// Extracts an incompatible factor pair from a non-rich word, as JSON with
/// fields u, v, r, p, q, z. Rich input is a precondition error.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_witness_json(word: *const RwWord, out: *mut *mut c_char) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let witness = lib_try!(richness::extract_e2_witness(ffi_try!(deref_word(word))));
    *out = string_out(serde_json::to_string(&witness).expect("serializable"));
    RwStatus::Ok
}

/// Four-factor witness for a word over at most two letters. Writes the
/// witness, or null when the word is rich and no witness exists.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string (or null) to free
/// with `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_binary_nonrich_witness(
    word: *const RwWord,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let witness = lib_try!(richness::binary_nonrich_witness(ffi_try!(deref_word(word))));
    *out = match witness {
        Some(q) => string_out(q.to_string()),
        None => ptr::null_mut(),
    };
    RwStatus::Ok
}

/// Compatibility verdict for two rich words as JSON with fields status,
/// witness, bound.
///
/// # Safety
/// `u` and `v` must be live handles; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_compat_search_json(
    u: *const RwWord,
    v: *const RwWord,
    max_len: usize,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let verdict = lib_try!(richness::compat_search(
        ffi_try!(deref_word(u)),
        ffi_try!(deref_word(v)),
        max_len
    ));
    *out = string_out(serde_json::to_string(&verdict).expect("serializable"));
    RwStatus::Ok
}

/// Number of rich words of length exactly `n` over `d` letters.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_count_rich(d: usize, n: usize, out: *mut u64) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = lib_try!(richwords::enumeration::count_rich_exact(d, n));
    RwStatus::Ok
}

/// Number of distinct words of length `n` produced by the two-letter block
/// construction.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_gss_count(n: usize, out: *mut u64) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = richwords::enumeration::gss_count(n);
    RwStatus::Ok
}

/// Factorization of a rich word into its unioccurrent palindromic suffixes,
/// as a JSON array of strings. Non-rich input is a precondition error.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_ups_factorization_json(
    word: *const RwWord,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let parts = lib_try!(palindrome::ups_factorization(ffi_try!(deref_word(word))));
    let strings: Vec<String> = parts.iter().map(Word::to_string).collect();
    *out = string_out(serde_json::to_string(&strings).expect("serializable"));
    RwStatus::Ok
}

/// Identity partial sums of the periodic word `period^infinity`, as JSON with
/// fields partial_sums, defect_estimate, saturated.
///
/// # Safety
/// `period` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_periodic_identity_sums_json(
    period: *const RwWord,
    k_max: usize,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let report = lib_try!(richness::brlek_reutenauer_sum(
        ffi_try!(deref_word(period)),
        k_max
    ));
    *out = string_out(serde_json::to_string(&report).expect("serializable"));
    RwStatus::Ok
}

/// Minimal non-rich words up to length `max_n` over `d` letters, one orbit
/// representative each, as a JSON array of strings.
///
/// # Safety
/// `out` receives a string to free with `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_minimal_nonrich_json(
    d: usize,
    max_n: usize,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let words = lib_try!(richness::minimal_nonrich(d, max_n));
    let strings: Vec<String> = words.iter().map(Word::to_string).collect();
    *out = string_out(serde_json::to_string(&strings).expect("serializable"));
    RwStatus::Ok
}

/// Parses a morphism from text like `a->abab;b->aab`. On success writes a
/// handle that must be freed with `rw_morphism_free`.
///
/// # Safety
/// `text` must point to a nul-terminated string; `out` must be valid for a
/// single pointer write.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_parse(
    text: *const c_char,
    out: *mut *mut RwMorphism,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let text = ffi_try!(read_str(text));
    let morphism: Morphism = lib_try!(text.parse());
    *out = Box::into_raw(Box::new(RwMorphism(morphism)));
    RwStatus::Ok
}

/// Frees a morphism handle. Null is ignored.
///
/// # Safety
/// `morphism` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_free(morphism: *mut RwMorphism) {
    if !morphism.is_null() {
        drop(Box::from_raw(morphism));
    }
}

/// Applies the morphism to a word, producing a new word handle.
///
/// # Safety
/// `morphism` and `word` must be live handles; `out` must be valid for a
/// single pointer write.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_apply(
    morphism: *const RwMorphism,
    word: *const RwWord,
    out: *mut *mut RwWord,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let image = lib_try!(ffi_try!(deref_morphism(morphism)).apply(ffi_try!(deref_word(word))));
    *out = Box::into_raw(Box::new(RwWord(image)));
    RwStatus::Ok
}

/// Whether some power of the morphism maps every letter to a word containing
/// every letter.
///
/// # Safety
/// `morphism` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_is_primitive(
    morphism: *const RwMorphism,
    out: *mut bool,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = lib_try!(ffi_try!(deref_morphism(morphism)).is_primitive());
    RwStatus::Ok
}

/// Prefix of the fixed point grown from `seed` (a Unicode scalar value),
/// truncated to exactly `min_len` letters, as a word handle.
///
/// # Safety
/// `morphism` must be a live handle; `out` must be valid for a single
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_fixed_point_prefix(
    morphism: *const RwMorphism,
    seed: u32,
    min_len: usize,
    out: *mut *mut RwWord,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let Some(seed) = char::from_u32(seed) else {
        set_error(format!("{seed:#x} is not a Unicode scalar value"));
        return RwStatus::ParseError;
    };
    let prefix = lib_try!(ffi_try!(deref_morphism(morphism)).fixed_point_prefix(seed, min_len));
    *out = Box::into_raw(Box::new(RwWord(prefix)));
    RwStatus::Ok
}

/// Renders a word back to UTF-8 text.
///
/// # Safety
/// `word` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_word_to_string(word: *const RwWord, out: *mut *mut c_char) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    *out = string_out(ffi_try!(deref_word(word)).to_string());
    RwStatus::Ok
}

/// Defect profile of the fixed point grown from `seed`, as JSON with fields
/// morphism, seed, checkpoints, verdict.
///
/// # Safety
/// `morphism` must be a live handle; `out` receives a string to free with
/// `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_defect_profile_json(
    morphism: *const RwMorphism,
    seed: u32,
    max_len: usize,
    checkpoints: usize,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let Some(seed) = char::from_u32(seed) else {
        set_error(format!("{seed:#x} is not a Unicode scalar value"));
        return RwStatus::ParseError;
    };
    let profile =
        lib_try!(ffi_try!(deref_morphism(morphism)).defect_profile(seed, max_len, checkpoints));
    *out = string_out(serde_json::to_string(&profile).expect("serializable"));
    RwStatus::Ok
}

/// Conjugate admitting a palindromic image decomposition, as JSON with fields
/// morphism, class_p, conjugator; writes null when no conjugate qualifies.
///
/// # Safety
/// `morphism` must be a live handle; `out` receives a string (or null) to
/// free with `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_class_p_prime_json(
    morphism: *const RwMorphism,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let cert = lib_try!(ffi_try!(deref_morphism(morphism)).class_p_prime_certificate());
    *out = match cert {
        Some(cert) => string_out(serde_json::to_string(&cert).expect("serializable")),
        None => ptr::null_mut(),
    };
    RwStatus::Ok
}

/// Conjugate pair witnessing markedness, as JSON with fields phi1, phi2 and
/// their certificates; writes null when the morphism is not marked.
///
/// # Safety
/// `morphism` must be a live handle; `out` receives a string (or null) to
/// free with `rw_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rw_morphism_marked_pair_json(
    morphism: *const RwMorphism,
    out: *mut *mut c_char,
) -> RwStatus {
    let out = ffi_try!(out_ptr(out));
    let pair = lib_try!(ffi_try!(deref_morphism(morphism)).marked_pair());
    *out = match pair {
        Some(pair) => string_out(serde_json::to_string(&pair).expect("serializable")),
        None => ptr::null_mut(),
    };
    RwStatus::Ok
}
