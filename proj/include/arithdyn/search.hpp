#pragma once

// Window enumeration of I_{u,w,S} = {(m, n) : f^m(u) is S-integral relative
// to f^n(w)}. The window search is exhaustive and exact; it is evidence, not
// a proof about all of N^2.

#include <optional>
#include <string>
#include <vector>

#include "arithdyn/integrality.hpp"
#include "arithdyn/ratmap.hpp"

namespace arithdyn {

struct PairWindow {
    std::size_t m_max = 0;
    std::size_t n_max = 0;

    friend bool operator==(const PairWindow&, const PairWindow&) = default;
};

/// Largest orbit index allowed for maps of degree d: floor(log_d(degree cap)).
std::size_t default_orbit_cap(std::size_t d, const Limits& limits = {});

enum class SearchMode {
    Direct,      ///< pairwise cross-term tests on the two orbits
    Functorial,  ///< (m, n) tested as (m-k, n-k) relative to D_k
};

struct SearchOptions {
    Limits limits;
    /// 0 selects default_orbit_cap(d).
    std::size_t orbit_cap = 0;
    /// Use the functoriality shortcut when S contains the bad primes.
    bool functorial = false;
    std::size_t functorial_depth = 2;
    std::size_t certify_iterations = 64;
};

struct PairEntry {
    std::size_t m = 0, n = 0;
    IntegralityWitness witness;
};

struct GridCell {
    std::size_t m = 0, n = 0;
    bool verdict = false;
    std::optional<BigInt> smallest_violating_prime;
};

struct Hypotheses {
    OrbitVerdict u;
    OrbitVerdict w;
    PoweringWitness powering;
    std::vector<Locus> exceptional;
    /// Both orbits certified wandering and f not a powering map.
    bool finiteness_hypotheses_hold = false;
};

struct PairReport {
    PairWindow window;       ///< requested
    PairWindow searched;     ///< actually enumerated (smaller when truncated)
    bool truncated = false;
    std::string truncation_reason;
    PlaceSet S;
    SearchMode mode = SearchMode::Direct;
    std::vector<PairEntry> pairs;  ///< sorted by (m, n)
    std::vector<GridCell> grid;    ///< every searched cell, row-major
    Hypotheses hypotheses;
    /// max over found pairs of max(m, n).
    std::optional<std::size_t> frontier;
};

/// Orbit P, f(P), ..., f^count(P); stops early (returns fewer points) when a
/// coordinate exceeds the digit budget.
std::vector<ProjPoint> orbit(const RatMap& f, const ProjPoint& P, std::size_t count, const Limits& limits = {});

PairReport find_integral_pairs(const RatMap& f, const ProjPoint& u, const ProjPoint& w, const PlaceSet& S,
                               const PairWindow& window, const SearchOptions& options = {});

struct Coset {
    std::pair<std::size_t, std::size_t> base;
    std::vector<std::pair<std::size_t, std::size_t>> generators;
};

struct CosetStructure {
    std::vector<Coset> cosets;
    std::vector<std::pair<std::size_t, std::size_t>> residual;
};

/// Greedy window-level decomposition into translated subsemigroups
/// (one or two generators) plus isolated residual pairs.
CosetStructure detect_coset_structure(const PairReport& report);

/// Cells of the window covered by the structure, sorted.
std::vector<std::pair<std::size_t, std::size_t>> expand(const CosetStructure& cs, const PairWindow& window);

struct TauAnnotation {
    std::size_t m = 0, n = 0;
    std::optional<Rational> tau;  ///< f^m(u)/f^n(w) - 1 when both are finite and nonzero
    bool tau_unit = false;
    bool tau_plus_one_unit = false;
};

struct PoweringAnalysis {
    PairReport report;
    PlaceSet enlarged;
    PoweringWitness witness;
    std::vector<TauAnnotation> annotations;
    std::vector<Rational> distinct_taus;
};

/// For f conjugate to x^(+-d) and nonzero finite u, w: enlarges S by the bad
/// primes and the primes of u and w, searches, and annotates each pair with
/// tau = f^m(u)/f^n(w) - 1.
PoweringAnalysis powering_pair_analysis(const RatMap& f, const ProjPoint& u, const ProjPoint& w, const PlaceSet& S,
                                        const PairWindow& window, const SearchOptions& options = {});

struct ExceptionalEnlargement {
    PlaceSet enlarged;
    ProjPoint exceptional;
    PairWindow window;
    bool verified = false;  ///< every (m, n) in the window is integral for `enlarged`
    std::size_t failures = 0;
};

/// Enlarges S so that f^m(u) is integral relative to f^n(w) for every (m, n),
/// where w is a rational exceptional point of f (w = infinity when it is
/// exceptional, else the first rational one, unless given explicitly).
ExceptionalEnlargement exceptional_case_enlarge(const RatMap& f, const ProjPoint& u, const PlaceSet& S,
                                                const PairWindow& window,
                                                const std::optional<ProjPoint>& w = std::nullopt,
                                                const SearchOptions& options = {});

}  // namespace arithdyn
