#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wigner {

using Letter = int;

/// A finite letter sequence, length >= 1. Closed iff first == last letter.
struct Word {
    std::vector<Letter> letters;

    Word() = default;
    Word(std::initializer_list<Letter> ls) : letters(ls) {}
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    int length() const { return static_cast<int>(letters.size()); }
    bool closed() const { return !letters.empty() && letters.front() == letters.back(); }
};

/// Undirected edge as an ordered pair (min, max); self-loops allowed.
using EdgeKey = std::pair<Letter, Letter>;

inline EdgeKey edge_key(Letter u, Letter v) { return u <= v ? EdgeKey{u, v} : EdgeKey{v, u}; }

/// Graph of a word: vertices = support, edges = consecutive-letter pairs,
/// with per-edge passage counts.
struct WordStats {
    int length = 0;
    int weight = 0;                        // distinct letters
    bool closed = false;
    std::vector<Letter> support;           // sorted
    std::map<EdgeKey, int> passages;       // edge -> traversal count
    int distinct_edges() const { return static_cast<int>(passages.size()); }
};

WordStats word_stats(const Word& w);

/// Ordered collection of words; support/weight/graph are unions.
struct Sentence {
    std::vector<Word> words;

    Sentence() = default;
    Sentence(std::initializer_list<Word> ws) : words(ws) {}
    explicit Sentence(std::vector<Word> ws) : words(std::move(ws)) {}

    int total_length() const {
        int s = 0;
        for (const Word& w : words) s += w.length();
        return s;
    }
};

/// Canonical representative of the relabeling equivalence class: letters
/// renamed 1,2,... in order of first appearance across the concatenated
/// sentence. Equivalent sentences map to the same object.
Sentence canonical_form(const Sentence& a);

/// Outcome of checking one sentence against the weight-bound lemma for
/// matched open-word families.
struct CltReport {
    // precondition flags (violations are reported, not errors)
    bool words_all_open = false;
    bool edges_at_least_twice = false;
    bool every_word_shares_edge = false;
    bool preconditions_met() const {
        return words_all_open && edges_at_least_twice && every_word_shares_edge;
    }

    int weight = 0;              // wt(a)
    int total_length = 0;        // sum of word lengths; bound is total_length/2
    bool bound_holds = false;    // 2*wt <= total_length
    bool equality = false;       // 2*wt == total_length
    bool half_slack = false;     // 2*wt <= total_length - 1

    // equality characterization
    bool cond_a = false;  // every edge traversed exactly twice
    bool cond_b = false;  // m/2 tree components, two words per component
    bool cond_c = false;  // unique partner word for every word
    bool cond_d = false;  // shared edges form one path, traversed once by each partner
    bool conditions_hold() const { return cond_a && cond_b && cond_c && cond_d; }
};

CltReport check_clt_sentence(const Sentence& a);

struct CltScanConfig {
    int min_words = 2;
    int max_words = 4;
    int min_word_len = 2;   // open words need length >= 2
    int max_word_len = 4;
    int max_letters = 6;
};

struct CltScanSummary {
    long long leaves_visited = 0;          // complete canonical sentences reached
    long long preconditions_passed = 0;
    long long equality_cases = 0;
    std::map<int, long long> equality_by_word_count;

    // lemma violations; all expected to stay zero
    long long bound_violations = 0;           // 2*wt > sum l
    long long equality_without_conditions = 0;
    long long conditions_without_equality = 0;
    long long slack_violations = 0;           // some condition fails but 2*wt > sum l - 1

    std::vector<std::string> counterexamples;  // rendered, capped

    long long total_violations() const {
        return bound_violations + equality_without_conditions + conditions_without_equality +
               slack_violations;
    }
};

/// Enumerates every canonical sentence within the budget (word counts,
/// lengths, alphabet size), filters by the lemma's preconditions, and checks
/// the bound, the equality characterization and the half-slack claim on
/// everything that passes. Expected result: zero violations.
CltScanSummary exhaustive_clt_scan(const CltScanConfig& config = {});

}  // namespace wigner
