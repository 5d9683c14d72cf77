#include "wigner/words.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wigner/parallel.hpp"

namespace wigner {

WordStats word_stats(const Word& w) {
    if (w.letters.empty()) throw std::invalid_argument("word_stats: empty word");
    WordStats st;
    st.length = w.length();
    st.closed = w.closed();
    std::set<Letter> supp(w.letters.begin(), w.letters.end());
    st.support.assign(supp.begin(), supp.end());
    st.weight = static_cast<int>(st.support.size());
    for (std::size_t i = 0; i + 1 < w.letters.size(); ++i)
        st.passages[edge_key(w.letters[i], w.letters[i + 1])] += 1;
    return st;
}

Sentence canonical_form(const Sentence& a) {
    std::map<Letter, Letter> rename;
    Letter next = 1;
    Sentence out;
    out.words.reserve(a.words.size());
    for (const Word& w : a.words) {
        Word cw;
        cw.letters.reserve(w.letters.size());
        for (Letter s : w.letters) {
            auto it = rename.find(s);
            if (it == rename.end()) it = rename.emplace(s, next++).first;
            cw.letters.push_back(it->second);
        }
        out.words.push_back(std::move(cw));
    }
    return out;
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
};

/// Shared edges of a matched pair must form one simple path: connected,
/// acyclic, max degree 2, no self-loops.
bool edges_form_single_path(const std::set<EdgeKey>& edges) {
    if (edges.empty()) return false;
    std::map<Letter, int> degree;
    std::set<Letter> verts;
    for (const EdgeKey& e : edges) {
        if (e.first == e.second) return false;
        degree[e.first] += 1;
        degree[e.second] += 1;
        verts.insert(e.first);
        verts.insert(e.second);
    }
    if (edges.size() != verts.size() - 1) return false;  // acyclic + connected edge count
    int endpoints = 0;
    for (const auto& [v, d] : degree) {
        (void)v;
        if (d > 2) return false;
        if (d == 1) ++endpoints;
    }
    if (endpoints != 2) return false;
    // connectivity
    DisjointSet dsu(static_cast<int>(verts.size()));
    std::map<Letter, int> id;
    int next = 0;
    for (Letter v : verts) id[v] = next++;
    for (const EdgeKey& e : edges) dsu.unite(id[e.first], id[e.second]);
    int root = dsu.find(0);
    for (int i = 1; i < next; ++i)
        if (dsu.find(i) != root) return false;
    return true;
}

}  // namespace

CltReport check_clt_sentence(const Sentence& a) {
    if (a.words.empty()) throw std::invalid_argument("check_clt_sentence: empty sentence");
    const int m = static_cast<int>(a.words.size());

    CltReport rep;
    rep.total_length = a.total_length();

    std::vector<WordStats> stats;
    stats.reserve(a.words.size());
    for (const Word& w : a.words) stats.push_back(word_stats(w));

    rep.words_all_open = true;
    for (const WordStats& st : stats)
        if (st.closed || st.length < 2) rep.words_all_open = false;

    // joint graph
    std::map<EdgeKey, int> joint_passages;
    std::set<Letter> support;
    for (const WordStats& st : stats) {
        for (const auto& [e, c] : st.passages) joint_passages[e] += c;
        support.insert(st.support.begin(), st.support.end());
    }
    rep.weight = static_cast<int>(support.size());

    rep.edges_at_least_twice = true;
    for (const auto& [e, c] : joint_passages) {
        (void)e;
        if (c < 2) rep.edges_at_least_twice = false;
    }

    // which words share an edge with which
    std::vector<std::set<int>> partners(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const auto& pi = stats[static_cast<std::size_t>(i)].passages;
            const auto& pj = stats[static_cast<std::size_t>(j)].passages;
            for (const auto& [e, c] : pi) {
                (void)c;
                if (pj.count(e)) {
                    partners[static_cast<std::size_t>(i)].insert(j);
                    partners[static_cast<std::size_t>(j)].insert(i);
                    break;
                }
            }
        }
    rep.every_word_shares_edge = true;
    for (int i = 0; i < m; ++i)
        if (partners[static_cast<std::size_t>(i)].empty()) rep.every_word_shares_edge = false;

    rep.bound_holds = 2 * rep.weight <= rep.total_length;
    rep.equality = 2 * rep.weight == rep.total_length;
    rep.half_slack = 2 * rep.weight <= rep.total_length - 1;

    // (a) every edge exactly twice
    rep.cond_a = true;
    for (const auto& [e, c] : joint_passages) {
        (void)e;
        if (c != 2) rep.cond_a = false;
    }

    // components of the joint graph
    std::map<Letter, int> vid;
    int nv = 0;
    for (Letter v : support) vid[v] = nv++;
    DisjointSet dsu(nv);
    for (const auto& [e, c] : joint_passages) {
        (void)c;
        dsu.unite(vid[e.first], vid[e.second]);
    }
    std::map<int, std::vector<int>> comp_words;  // root -> word indices
    for (int i = 0; i < m; ++i) {
        Letter v0 = a.words[static_cast<std::size_t>(i)].letters.front();
        comp_words[dsu.find(vid[v0])].push_back(i);
    }
    std::map<int, int> comp_vertices, comp_edges;
    for (const auto& [v, id] : vid) {
        (void)v;
        comp_vertices[dsu.find(id)] += 1;
    }
    bool self_loop = false;
    for (const auto& [e, c] : joint_passages) {
        (void)c;
        if (e.first == e.second) self_loop = true;
        comp_edges[dsu.find(vid[e.first])] += 1;
    }

    // (b) m even, m/2 components, each a tree with exactly two words
    rep.cond_b = (m % 2 == 0) && static_cast<int>(comp_words.size()) == m / 2 && !self_loop;
    if (rep.cond_b) {
        for (const auto& [root, ws] : comp_words) {
            if (ws.size() != 2) rep.cond_b = false;
            if (comp_edges[root] != comp_vertices[root] - 1) rep.cond_b = false;
        }
    }

    // (c) unique partner per word
    rep.cond_c = true;
    for (int i = 0; i < m; ++i)
        if (partners[static_cast<std::size_t>(i)].size() != 1) rep.cond_c = false;

    // (d) per matched pair: shared edges form a single path traversed once by
    // each word; all other edges belong to one word and are traversed twice
    rep.cond_d = rep.cond_c;
    if (rep.cond_d) {
        for (int i = 0; i < m && rep.cond_d; ++i) {
            int j = *partners[static_cast<std::size_t>(i)].begin();
            if (j < i) continue;  // each pair once
            const auto& pi = stats[static_cast<std::size_t>(i)].passages;
            const auto& pj = stats[static_cast<std::size_t>(j)].passages;
            std::set<EdgeKey> shared;
            for (const auto& [e, c] : pi) {
                (void)c;
                if (pj.count(e)) shared.insert(e);
            }
            if (!edges_form_single_path(shared)) { rep.cond_d = false; break; }
            for (const EdgeKey& e : shared)
                if (pi.at(e) != 1 || pj.at(e) != 1) { rep.cond_d = false; break; }
            for (const auto& [e, c] : pi)
                if (!shared.count(e) && c != 2) { rep.cond_d = false; break; }
            if (!rep.cond_d) break;
            for (const auto& [e, c] : pj)
                if (!shared.count(e) && c != 2) { rep.cond_d = false; break; }
        }
    }

    return rep;
}

namespace {

std::string render_sentence(const Sentence& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.words.size(); ++i) {
        if (i) os << " | ";
        for (std::size_t j = 0; j < a.words[i].letters.size(); ++j) {
            if (j) os << ",";
            os << a.words[i].letters[j];
        }
    }
    return os.str();
}

/// DFS enumeration of canonical sentences for fixed word lengths. Prunes on
/// the alphabet cap and on edge-deficit infeasibility: every edge traversed
/// once so far needs at least one future traversal, so if the number of
/// deficient edges exceeds the remaining edge slots the branch is dead.
class Scanner {
public:
    Scanner(const CltScanConfig& cfg, CltScanSummary& summary)
        : cfg_(cfg), summary_(summary),
          edge_count_(static_cast<std::size_t>((cfg.max_letters + 1) * (cfg.max_letters + 1)), 0) {}

    void run(const std::vector<int>& lengths) {
        lengths_ = lengths;
        flat_.clear();
        boundaries_.clear();
        int total = 0;
        for (int len : lengths) {
            boundaries_.push_back(total);  // word-start positions
            total += len;
        }
        total_positions_ = total;
        remaining_slots_ = 0;
        for (int len : lengths) remaining_slots_ += len - 1;
        used_letters_ = 0;
        deficit_ = 0;
        extend(0);
    }

private:
    bool is_word_start(int pos) const {
        for (int b : boundaries_)
            if (b == pos) return true;
        return false;
    }

    int word_of(int pos) const {
        int w = 0;
        for (std::size_t k = 1; k < boundaries_.size(); ++k)
            if (pos >= boundaries_[k]) w = static_cast<int>(k);
        return w;
    }

    int& edge_slot(Letter u, Letter v) {
        if (u > v) std::swap(u, v);
        return edge_count_[static_cast<std::size_t>(u * (cfg_.max_letters + 1) + v)];
    }

    void extend(int pos) {
        if (pos == total_positions_) {
            finish();
            return;
        }
        const bool start = is_word_start(pos);
        const int max_choice = std::min(used_letters_ + 1, cfg_.max_letters);
        for (Letter s = 1; s <= max_choice; ++s) {
            const bool is_new = (s == used_letters_ + 1);
            int delta_deficit = 0;
            int prev = -1;
            if (!start) {
                prev = flat_[static_cast<std::size_t>(pos - 1)];
                int& cnt = edge_slot(prev, s);
                if (cnt == 0) delta_deficit = 1;
                else if (cnt == 1) delta_deficit = -1;
                cnt += 1;
                remaining_slots_ -= 1;
                deficit_ += delta_deficit;
            }
            bool feasible = deficit_ <= remaining_slots_;
            if (feasible) {
                flat_.push_back(s);
                if (is_new) ++used_letters_;
                extend(pos + 1);
                if (is_new) --used_letters_;
                flat_.pop_back();
            }
            if (!start) {
                deficit_ -= delta_deficit;
                remaining_slots_ += 1;
                edge_slot(prev, s) -= 1;
            }
        }
    }

    void finish() {
        ++summary_.leaves_visited;
        if (deficit_ != 0) return;  // some edge traversed once: precondition filter

        Sentence a;
        a.words.resize(lengths_.size());
        int pos = 0;
        for (std::size_t w = 0; w < lengths_.size(); ++w) {
            auto& ls = a.words[w].letters;
            ls.assign(flat_.begin() + pos, flat_.begin() + pos + lengths_[w]);
            pos += lengths_[w];
        }

        CltReport rep = check_clt_sentence(a);
        if (!rep.preconditions_met()) return;
        ++summary_.preconditions_passed;

        bool violation = false;
        if (!rep.bound_holds) {
            ++summary_.bound_violations;
            violation = true;
        }
        if (rep.equality) {
            ++summary_.equality_cases;
            ++summary_.equality_by_word_count[static_cast<int>(lengths_.size())];
            if (!rep.conditions_hold()) {
                ++summary_.equality_without_conditions;
                violation = true;
            }
        } else if (rep.conditions_hold()) {
            ++summary_.conditions_without_equality;
            violation = true;
        }
        if (!rep.conditions_hold() && !rep.half_slack) {
            ++summary_.slack_violations;
            violation = true;
        }
        if (violation && summary_.counterexamples.size() < 20)
            summary_.counterexamples.push_back(render_sentence(a));
    }

    const CltScanConfig& cfg_;
    CltScanSummary& summary_;
    std::vector<int> lengths_;
    std::vector<int> boundaries_;
    std::vector<Letter> flat_;
    std::vector<int> edge_count_;
    int total_positions_ = 0;
    int remaining_slots_ = 0;
    int used_letters_ = 0;
    int deficit_ = 0;
};

void for_each_length_tuple(const CltScanConfig& cfg, int m, std::vector<int>& tuple,
                           const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(tuple.size()) == m) {
        fn(tuple);
        return;
    }
    for (int len = cfg.min_word_len; len <= cfg.max_word_len; ++len) {
        tuple.push_back(len);
        for_each_length_tuple(cfg, m, tuple, fn);
        tuple.pop_back();
    }
}

}  // namespace

CltScanSummary exhaustive_clt_scan(const CltScanConfig& config) {
    if (config.min_words < 1 || config.max_words < config.min_words)
        throw std::invalid_argument("exhaustive_clt_scan: bad word-count range");
    if (config.min_word_len < 2 || config.max_word_len < config.min_word_len)
        throw std::invalid_argument("exhaustive_clt_scan: bad word-length range");
    if (config.max_letters < 1 || config.max_letters > 8)
        throw std::invalid_argument("exhaustive_clt_scan: alphabet budget out of range");
    if (config.max_words * config.max_word_len > 24)
        throw std::invalid_argument("exhaustive_clt_scan: enumeration budget exceeded");

    std::vector<std::vector<int>> tuples;
    for (int m = config.min_words; m <= config.max_words; ++m) {
        std::vector<int> tuple;
        for_each_length_tuple(config, m, tuple,
                              [&](const std::vector<int>& lengths) { tuples.push_back(lengths); });
    }

    // biggest subtrees first for load balance; the merge below stays in the
    // (sorted) tuple order, identical for any worker count
    std::stable_sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
        int sa = 0, sb = 0;
        for (int x : a) sa += x;
        for (int x : b) sb += x;
        return sa > sb;
    });
    std::vector<CltScanSummary> partial(tuples.size());
    parallel_for(static_cast<long>(tuples.size()), [&](long t) {
        Scanner scanner(config, partial[static_cast<std::size_t>(t)]);
        scanner.run(tuples[static_cast<std::size_t>(t)]);
    });

    CltScanSummary summary;
    for (const CltScanSummary& s : partial) {
        summary.leaves_visited += s.leaves_visited;
        summary.preconditions_passed += s.preconditions_passed;
        summary.equality_cases += s.equality_cases;
        for (const auto& [m, c] : s.equality_by_word_count) summary.equality_by_word_count[m] += c;
        summary.bound_violations += s.bound_violations;
        summary.equality_without_conditions += s.equality_without_conditions;
        summary.conditions_without_equality += s.conditions_without_equality;
        summary.slack_violations += s.slack_violations;
        for (const auto& ce : s.counterexamples)
            if (summary.counterexamples.size() < 20) summary.counterexamples.push_back(ce);
    }
    return summary;
}

}  // namespace wigner
