#include "twistrec/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace twistrec {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& px = parent[static_cast<std::size_t>(x)];
            px = parent[static_cast<std::size_t>(px)];
            x = px;
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

// Occurrences of each label as (crossing, slot).
using Occ = std::pair<int, int>;
std::map<int, std::vector<Occ>> occurrences(const PlanarDiagram& d) {
    std::map<int, std::vector<Occ>> occ;
    for (int c = 0; c < d.size(); ++c)
        for (int s = 0; s < 4; ++s) occ[d.crossings[static_cast<std::size_t>(c)].e[static_cast<std::size_t>(s)]].push_back({c, s});
    return occ;
}

Occ other_end(const std::map<int, std::vector<Occ>>& occ, int label, Occ here) {
    const auto& v = occ.at(label);
    return v[0] == here ? v[1] : v[0];
}

// Walks each component once.  entry[c][s] is true when the walk enters crossing c through slot s.
struct Walk {
    std::vector<std::array<bool, 4>> entry;
    std::vector<std::vector<Occ>> components;  // entry occurrences in traversal order
};

// Components containing one of the seeds are entered there first.
Walk walk(const PlanarDiagram& d, const std::vector<Occ>& seeds = {}) {
    auto occ = occurrences(d);
    Walk w;
    w.entry.assign(static_cast<std::size_t>(d.size()), {false, false, false, false});
    std::vector<std::array<bool, 4>> seen(static_cast<std::size_t>(d.size()), {false, false, false, false});
    std::vector<Occ> starts = seeds;
    for (int c = 0; c < d.size(); ++c)
        for (int s0 : {0, 1}) starts.push_back({c, s0});
    for (auto [c, s0] : starts) {
        {
            if (c < 0 || c >= d.size() || s0 < 0 || s0 > 3) continue;
            if (seen[static_cast<std::size_t>(c)][static_cast<std::size_t>(s0)]) continue;
            std::vector<Occ> comp;
            Occ cur{c, s0};
            do {
                auto [cc, ss] = cur;
                int out = (ss + 2) % 4;
                seen[static_cast<std::size_t>(cc)][static_cast<std::size_t>(ss)] = true;
                seen[static_cast<std::size_t>(cc)][static_cast<std::size_t>(out)] = true;
                w.entry[static_cast<std::size_t>(cc)][static_cast<std::size_t>(ss)] = true;
                comp.push_back(cur);
                int label = d.crossings[static_cast<std::size_t>(cc)].e[static_cast<std::size_t>(out)];
                cur = other_end(occ, label, {cc, out});
            } while (cur != Occ{c, s0});
            w.components.push_back(std::move(comp));
        }
    }
    return w;
}

LaurentPoly delta() { return LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1); }

}  // namespace

int oracle_limit() {
    if (const char* env = std::getenv("TWISTREC_ORACLE_LIMIT")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 200) return static_cast<int>(v);
    }
    return kDefaultOracleLimit;
}

void validate(const PlanarDiagram& d) {
    if (d.free_loops < 0) throw std::invalid_argument("negative free loop count");
    std::map<int, int> count;
    for (const auto& c : d.crossings) {
        if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("crossing sign must be +1 or -1");
        for (int x : c.e) ++count[x];
    }
    for (auto [label, n] : count)
        if (n != 2) throw std::invalid_argument("edge label " + std::to_string(label) + " occurs " + std::to_string(n) + " times");
}

PlanarDiagram oriented(const PlanarDiagram& d, bool relabel) { return oriented_along(d, {}, relabel); }

PlanarDiagram oriented_along(const PlanarDiagram& d, const std::vector<std::pair<int, int>>& entries, bool relabel) {
    validate(d);
    Walk w = walk(d, entries);
    PlanarDiagram r = d;
    if (relabel) {
        std::map<std::pair<int, int>, int> fresh;  // (crossing, slot) of the entry end -> new label
        int next = 1;
        for (const auto& comp : w.components)
            for (const auto& o : comp) fresh[o] = next++;
        auto occ = occurrences(d);
        for (int c = 0; c < d.size(); ++c) {
            for (int s = 0; s < 4; ++s) {
                Occ o{c, s};
                Occ in = w.entry[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]
                             ? o
                             : other_end(occ, d.crossings[static_cast<std::size_t>(c)].e[static_cast<std::size_t>(s)], o);
                r.crossings[static_cast<std::size_t>(c)].e[static_cast<std::size_t>(s)] = fresh.at(in);
            }
        }
    }
    for (int c = 0; c < d.size(); ++c) {
        auto& x = r.crossings[static_cast<std::size_t>(c)];
        const auto& en = w.entry[static_cast<std::size_t>(c)];
        bool rotate = !en[0];
        if (rotate) std::rotate(x.e.begin(), x.e.begin() + 2, x.e.end());
        bool d_in = rotate ? en[1] : en[3];
        x.sign = d_in ? 1 : -1;
    }
    return r;
}

bool signs_consistent(const PlanarDiagram& d) {
    validate(d);
    Walk w = walk(d);
    // Component id per (crossing, slot).
    std::vector<std::array<int, 4>> comp(static_cast<std::size_t>(d.size()));
    auto occ = occurrences(d);
    for (std::size_t k = 0; k < w.components.size(); ++k)
        for (auto [c, s] : w.components[k]) {
            comp[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = static_cast<int>(k);
            comp[static_cast<std::size_t>(c)][static_cast<std::size_t>((s + 2) % 4)] = static_cast<int>(k);
        }
    // flip[k]: whether component k runs against the walk direction.  0 unknown, 1 same, 2 reversed.
    std::vector<int> dir(w.components.size(), 0);
    for (int c = 0; c < d.size(); ++c) {
        int k = comp[static_cast<std::size_t>(c)][0];
        int want = w.entry[static_cast<std::size_t>(c)][0] ? 1 : 2;
        if (dir[static_cast<std::size_t>(k)] && dir[static_cast<std::size_t>(k)] != want) return false;
        dir[static_cast<std::size_t>(k)] = want;
    }
    for (int c = 0; c < d.size(); ++c) {
        const auto& x = d.crossings[static_cast<std::size_t>(c)];
        int k = comp[static_cast<std::size_t>(c)][1];
        bool d_in_walk = w.entry[static_cast<std::size_t>(c)][3];
        int need = (x.sign == 1) == d_in_walk ? 1 : 2;
        if (dir[static_cast<std::size_t>(k)] && dir[static_cast<std::size_t>(k)] != need) return false;
        dir[static_cast<std::size_t>(k)] = need;
    }
    return true;
}

PlanarDiagram parse_pd(const std::string& text) {
    PlanarDiagram d;
    static const std::regex xline(R"(^X\((-?\d+),(-?\d+),(-?\d+),(-?\d+),([+-])\)$)");
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }), line.end());
        if (line.empty()) continue;
        if (line == "O") {
            ++d.free_loops;
            continue;
        }
        std::smatch m;
        if (!std::regex_match(line, m, xline))
            throw std::invalid_argument("PD line " + std::to_string(lineno) + ": expected X(a,b,c,d,+|-)");
        Crossing c;
        for (int i = 0; i < 4; ++i) c.e[static_cast<std::size_t>(i)] = std::stoi(m[i + 1].str());
        c.sign = m[5].str() == "+" ? 1 : -1;
        d.crossings.push_back(c);
    }
    validate(d);
    if (!signs_consistent(d)) throw std::invalid_argument("PD crossing signs are inconsistent with any orientation");
    return d;
}

std::string to_pd_text(const PlanarDiagram& d) {
    std::ostringstream os;
    for (const auto& c : d.crossings)
        os << "X(" << c.e[0] << "," << c.e[1] << "," << c.e[2] << "," << c.e[3] << "," << (c.sign > 0 ? '+' : '-') << ")\n";
    for (int i = 0; i < d.free_loops; ++i) os << "O\n";
    return os.str();
}

int writhe(const PlanarDiagram& d) {
    int w = 0;
    for (const auto& c : d.crossings) w += c.sign;
    return w;
}

int component_count(const PlanarDiagram& d) {
    std::map<int, int> id;
    for (const auto& c : d.crossings)
        for (int x : c.e) id.emplace(x, static_cast<int>(id.size()));
    UnionFind uf(id.size());
    for (const auto& c : d.crossings) {
        uf.unite(id[c.e[0]], id[c.e[2]]);
        uf.unite(id[c.e[1]], id[c.e[3]]);
    }
    int n = d.free_loops;
    for (std::size_t i = 0; i < id.size(); ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
    return n;
}

int diagram_pieces(const PlanarDiagram& d) {
    std::map<int, int> id;
    for (const auto& c : d.crossings)
        for (int x : c.e) id.emplace(x, static_cast<int>(id.size()));
    UnionFind uf(id.size());
    for (const auto& c : d.crossings)
        for (int i = 1; i < 4; ++i) uf.unite(id[c.e[0]], id[c.e[static_cast<std::size_t>(i)]]);
    int n = d.free_loops;
    for (std::size_t i = 0; i < id.size(); ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
    return n;
}

bool is_alternating(const PlanarDiagram& d) {
    if (d.crossings.empty()) return true;
    Walk w = walk(d);
    for (const auto& comp : w.components) {
        for (std::size_t i = 0; i < comp.size(); ++i) {
            bool under_here = comp[i].second % 2 == 0;
            bool under_next = comp[(i + 1) % comp.size()].second % 2 == 0;
            if (under_here == under_next) return false;
        }
    }
    return true;
}

PlanarDiagram mirror_diagram(const PlanarDiagram& d) {
    PlanarDiagram r = d;
    for (auto& c : r.crossings) {
        // The old over strand becomes the under strand; start from its incoming end.
        if (c.sign > 0) std::rotate(c.e.begin(), c.e.begin() + 3, c.e.end());
        else std::rotate(c.e.begin(), c.e.begin() + 1, c.e.end());
        c.sign = -c.sign;
    }
    return r;
}

namespace {

int max_label(const PlanarDiagram& d) {
    int m = 0;
    for (const auto& c : d.crossings)
        for (int x : c.e) m = std::max(m, x);
    return m;
}

PlanarDiagram shifted_labels(const PlanarDiagram& d, int off) {
    PlanarDiagram r = d;
    for (auto& c : r.crossings)
        for (int& x : c.e) x += off;
    return r;
}

}  // namespace

PlanarDiagram disjoint_union(const PlanarDiagram& a, const PlanarDiagram& b) {
    PlanarDiagram r = a;
    PlanarDiagram bb = shifted_labels(b, max_label(a));
    r.crossings.insert(r.crossings.end(), bb.crossings.begin(), bb.crossings.end());
    r.free_loops += b.free_loops;
    return r;
}

PlanarDiagram connected_sum(const PlanarDiagram& a, const PlanarDiagram& b) {
    if (a.crossings.empty() && a.free_loops > 0) {
        PlanarDiagram r = b;
        r.free_loops += a.free_loops - 1;
        return r;
    }
    if (b.crossings.empty() && b.free_loops > 0) {
        PlanarDiagram r = a;
        r.free_loops += b.free_loops - 1;
        return r;
    }
    PlanarDiagram r = disjoint_union(a, b);
    // Both summands are oriented, so slot 0 of a crossing is the head of its edge.
    // Cut e (entering a's crossing 0) and f (entering b's first crossing); the tail of
    // each now runs into the head of the other, keeping every orientation.
    const int na = a.size();
    const int e = r.crossings[0].e[0];
    const int f = r.crossings[static_cast<std::size_t>(na)].e[0];
    r.crossings[0].e[0] = f;
    r.crossings[static_cast<std::size_t>(na)].e[0] = e;
    std::vector<std::pair<int, int>> entries;
    for (int c = 0; c < r.size(); ++c) {
        const Crossing& x = r.crossings[static_cast<std::size_t>(c)];
        entries.push_back({c, 0});
        entries.push_back({c, x.sign > 0 ? 3 : 1});
    }
    return oriented_along(r, entries);
}

// ---------------------------------------------------------------- bracket

namespace {

// Frontier state: sorted list of (end, partner) with end < partner, flattened.
using State = std::vector<int>;

struct StateHash {
    std::size_t operator()(const State& s) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int x : s) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

// Applies one smoothing (two arcs) to a frontier, returning the number of closed loops.
int apply_arcs(const State& in, const std::array<int, 4>& arcs, State& out) {
    // small flat partner map
    std::vector<std::pair<int, int>> m;
    m.reserve(in.size() + 4);
    for (std::size_t i = 0; i < in.size(); i += 2) {
        m.push_back({in[i], in[i + 1]});
        m.push_back({in[i + 1], in[i]});
    }
    auto find = [&](int x) -> int {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i].first == x) return static_cast<int>(i);
        return -1;
    };
    auto erase = [&](int x) {
        int i = find(x);
        m[static_cast<std::size_t>(i)] = m.back();
        m.pop_back();
    };
    auto set = [&](int x, int y) {
        int i = find(x);
        if (i < 0) m.push_back({x, y});
        else m[static_cast<std::size_t>(i)].second = y;
    };
    int loops = 0;
    for (int k = 0; k < 4; k += 2) {
        int x = arcs[static_cast<std::size_t>(k)], y = arcs[static_cast<std::size_t>(k + 1)];
        if (x == y) {  // both ends of this edge sit on this arc
            ++loops;
            continue;
        }
        int ix = find(x), iy = find(y);
        if (ix >= 0 && iy >= 0) {
            int px = m[static_cast<std::size_t>(ix)].second, py = m[static_cast<std::size_t>(iy)].second;
            if (px == y) {
                erase(x);
                erase(y);
                ++loops;
            } else {
                erase(x);
                erase(y);
                set(px, py);
                set(py, px);
            }
        } else if (ix >= 0) {
            int px = m[static_cast<std::size_t>(ix)].second;
            erase(x);
            set(y, px);
            set(px, y);
        } else if (iy >= 0) {
            int py = m[static_cast<std::size_t>(iy)].second;
            erase(y);
            set(x, py);
            set(py, x);
        } else {
            set(x, y);
            set(y, x);
        }
    }
    out.clear();
    for (auto [a, b] : m)
        if (a < b) {
            out.push_back(a);
            out.push_back(b);
        }
    // sort pairs
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < out.size(); i += 2) pairs.push_back({out[i], out[i + 1]});
    std::sort(pairs.begin(), pairs.end());
    out.clear();
    for (auto [a, b] : pairs) {
        out.push_back(a);
        out.push_back(b);
    }
    return loops;
}

std::vector<int> crossing_order(const PlanarDiagram& d) {
    const int n = d.size();
    std::vector<int> order;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::map<int, int> open;  // label -> occurrences processed
    for (int step = 0; step < n; ++step) {
        int best = -1, best_score = -100;
        for (int c = 0; c < n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            int score = 0;
            for (int x : d.crossings[static_cast<std::size_t>(c)].e) score += open.count(x) ? 2 : -1;
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
        for (int x : d.crossings[static_cast<std::size_t>(best)].e) {
            if (open.count(x)) open.erase(x);
            else open[x] = 1;
        }
    }
    return order;
}

}  // namespace

LaurentPoly kauffman_bracket(const PlanarDiagram& d, int limit) {
    if (d.size() > limit) throw TooLarge("diagram has " + std::to_string(d.size()) + " crossings, oracle limit is " + std::to_string(limit));
    validate(d);
    LaurentPoly del = delta();
    auto delta_pow = [&](int k) {
        LaurentPoly r = LaurentPoly::monomial(0);
        for (int i = 0; i < k; ++i) r = r * del;
        return r;
    };
    if (d.crossings.empty()) return d.free_loops <= 1 ? LaurentPoly::monomial(0) : delta_pow(d.free_loops - 1);

    std::unordered_map<State, LaurentPoly, StateHash> cur, next;
    cur[State{}] = LaurentPoly::monomial(0);
    State tmp;
    for (int c : crossing_order(d)) {
        const auto& e = d.crossings[static_cast<std::size_t>(c)].e;
        const std::array<int, 4> a_arcs{e[0], e[1], e[2], e[3]};
        const std::array<int, 4> b_arcs{e[0], e[3], e[1], e[2]};
        next.clear();
        for (const auto& [st, poly] : cur) {
            for (int which = 0; which < 2; ++which) {
                int loops = apply_arcs(st, which == 0 ? a_arcs : b_arcs, tmp);
                LaurentPoly term = poly.shifted(which == 0 ? 1 : -1);
                for (int i = 0; i < loops; ++i) term = term * del;
                auto it = next.find(tmp);
                if (it == next.end()) next.emplace(tmp, std::move(term));
                else it->second += term;
            }
        }
        std::swap(cur, next);
    }
    LaurentPoly total = cur[State{}];
    LaurentPoly q;
    if (!total.divide_exact(del, q)) throw std::logic_error("bracket: state sum not divisible by the loop value");
    return q * delta_pow(d.free_loops);
}

LaurentPoly kauffman_bracket_bruteforce(const PlanarDiagram& d) {
    validate(d);
    if (d.size() > 24) throw TooLarge("brute-force bracket limited to 24 crossings");
    std::map<int, int> id;
    for (const auto& c : d.crossings)
        for (int x : c.e) id.emplace(x, static_cast<int>(id.size()));
    std::map<std::pair<int, int>, std::int64_t> counts;  // (A exponent, loops) -> states
    const std::uint64_t n = static_cast<std::uint64_t>(d.size());
    for (std::uint64_t st = 0; st < (1ull << n); ++st) {
        UnionFind uf(id.size());
        int sigma = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const auto& e = d.crossings[i].e;
            if (st >> i & 1) {
                uf.unite(id[e[0]], id[e[3]]);
                uf.unite(id[e[1]], id[e[2]]);
                --sigma;
            } else {
                uf.unite(id[e[0]], id[e[1]]);
                uf.unite(id[e[2]], id[e[3]]);
                ++sigma;
            }
        }
        int loops = d.free_loops;
        for (std::size_t i = 0; i < id.size(); ++i)
            if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++loops;
        ++counts[{sigma, loops}];
    }
    LaurentPoly r;
    LaurentPoly del = delta();
    for (auto [key, cnt] : counts) {
        LaurentPoly t = LaurentPoly::monomial(key.first, cnt);
        for (int i = 1; i < key.second; ++i) t = t * del;
        r += t;
    }
    if (counts.empty()) r = LaurentPoly::monomial(0);
    return r;
}

LaurentPoly jones(const PlanarDiagram& d, int limit) {
    LaurentPoly b = kauffman_bracket(d, limit);
    int w = writhe(d);
    LaurentPoly f = b.shifted(-3 * w);
    if (w % 2 != 0) f = -f;
    return f.divided_exponents(-2);
}

std::string jones_to_string(const LaurentPoly& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    auto terms = v.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        auto [e, c] = *it;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        std::int64_t a = c < 0 ? -c : c;
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            if (a != 1) os << "*";
            os << "t";
            if (e % 2 == 0) {
                if (e != 2) os << "^" << (e / 2 < 0 ? "(" + std::to_string(e / 2) + ")" : std::to_string(e / 2));
            } else {
                os << "^(" << e << "/2)";
            }
        }
        first = false;
    }
    return os.str();
}

bool is_adequate(const PlanarDiagram& d) {
    std::map<int, int> id;
    for (const auto& c : d.crossings)
        for (int x : c.e) id.emplace(x, static_cast<int>(id.size()));
    UnionFind ua(id.size()), ub(id.size());
    for (const auto& c : d.crossings) {
        ua.unite(id[c.e[0]], id[c.e[1]]);
        ua.unite(id[c.e[2]], id[c.e[3]]);
        ub.unite(id[c.e[0]], id[c.e[3]]);
        ub.unite(id[c.e[1]], id[c.e[2]]);
    }
    for (const auto& c : d.crossings) {
        if (ua.find(id[c.e[0]]) == ua.find(id[c.e[2]])) return false;
        if (ub.find(id[c.e[0]]) == ub.find(id[c.e[2]])) return false;
    }
    return true;
}

// ---------------------------------------------------------------- tangle builder

TangleDiagram TangleDiagram::zero() {
    TangleDiagram t;
    int a = t.fresh(), b = t.fresh();
    t.nw_ = t.ne_ = a;
    t.sw_ = t.se_ = b;
    return t;
}

TangleDiagram TangleDiagram::infinity() {
    TangleDiagram t;
    int a = t.fresh(), b = t.fresh();
    t.nw_ = t.sw_ = a;
    t.ne_ = t.se_ = b;
    return t;
}

TangleDiagram TangleDiagram::from_fraction(const Fraction& f) {
    if (f.is_infinite()) return infinity();
    TangleWord w = cf_expand_uniform(f);
    const std::size_t n = w.size() - 1;
    TangleDiagram t = (n % 2 == 0) ? zero() : infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        if ((n - i) % 2 == 0) t.htwists(w[i]);
        else t.vtwists(w[i]);
    }
    return t;
}

void TangleDiagram::htwist(int s) {
    int ne = fresh(), se = fresh();
    // Positive twists carry positive crossings when the two strands run parallel.
    if (s > 0) cr_.push_back({se_, se, ne, ne_});
    else cr_.push_back({ne_, se_, se, ne});
    ne_ = ne;
    se_ = se;
}

void TangleDiagram::vtwist(int s) {
    int sw = fresh(), se = fresh();
    if (s > 0) cr_.push_back({sw, se, se_, sw_});
    else cr_.push_back({sw_, sw, se, se_});
    sw_ = sw;
    se_ = se;
}

void TangleDiagram::htwists(i64 n) {
    for (i64 i = 0; i < (n < 0 ? -n : n); ++i) htwist(n < 0 ? -1 : 1);
}

void TangleDiagram::vtwists(i64 n) {
    for (i64 i = 0; i < (n < 0 ? -n : n); ++i) vtwist(n < 0 ? -1 : 1);
}

TangleDiagram TangleDiagram::plus(const TangleDiagram& o) const {
    TangleDiagram r = *this;
    const int off = next_;
    for (auto c : o.cr_) {
        for (int& x : c) x += off;
        r.cr_.push_back(c);
    }
    for (auto [a, b] : o.glue_) r.glue_.push_back({a + off, b + off});
    r.glue_.push_back({ne_, o.nw_ + off});
    r.glue_.push_back({se_, o.sw_ + off});
    r.ne_ = o.ne_ + off;
    r.se_ = o.se_ + off;
    r.next_ = next_ + o.next_;
    return r;
}

PlanarDiagram TangleDiagram::close(bool numerator) const {
    UnionFind uf(static_cast<std::size_t>(next_));
    for (auto [a, b] : glue_) uf.unite(a, b);
    if (numerator) {
        uf.unite(nw_, ne_);
        uf.unite(sw_, se_);
    } else {
        uf.unite(nw_, sw_);
        uf.unite(ne_, se_);
    }
    PlanarDiagram d;
    std::vector<bool> used(static_cast<std::size_t>(next_), false);
    for (const auto& c : cr_) {
        Crossing x;
        for (int i = 0; i < 4; ++i) {
            x.e[static_cast<std::size_t>(i)] = uf.find(c[static_cast<std::size_t>(i)]) + 1;
            used[static_cast<std::size_t>(uf.find(c[static_cast<std::size_t>(i)]))] = true;
        }
        d.crossings.push_back(x);
    }
    for (int i = 0; i < next_; ++i)
        if (uf.find(i) == i && !used[static_cast<std::size_t>(i)]) ++d.free_loops;
    return oriented(d);
}

PlanarDiagram TangleDiagram::numerator() const { return close(true); }
PlanarDiagram TangleDiagram::denominator() const { return close(false); }

namespace {

i64 sgn(i64 x) { return (x > 0) - (x < 0); }

TangleDiagram family_row(i64 a, i64 b) {
    if (a == 0) {
        TangleDiagram t = TangleDiagram::zero();
        t.vtwists(b);
        return t;
    }
    const i64 s = sgn(a);
    TangleDiagram t = TangleDiagram::infinity();
    t.vtwists(-s * ((a < 0 ? -a : a) - 1));
    t.htwist(static_cast<int>(-s));
    t.vtwists(b);
    return t;
}

PlanarDiagram build_unchecked(const FamilyDatum& d) {
    PlanarDiagram r;
    switch (d.kind) {
        case Kind::Unknot:
            r.free_loops = 1;
            return r;
        case Kind::Unlink:
            r.free_loops = static_cast<int>(d.params[0]);
            return r;
        case Kind::Torus: {
            TangleDiagram t = TangleDiagram::zero();
            t.htwists(d.params[0]);
            PlanarDiagram pd = t.numerator();
            // Links get the braid-closure orientation: every crossing has the sign of m.
            const int want = d.params[0] > 0 ? 1 : -1;
            if (pd.crossings.empty() || d.params[0] % 2 != 0) return pd;
            for (int over_entry : {1, 3}) {
                PlanarDiagram o = oriented_along(pd, {{0, 0}, {0, over_entry}});
                if (std::all_of(o.crossings.begin(), o.crossings.end(), [&](const Crossing& c) { return c.sign == want; })) return o;
            }
            return pd;
        }
        case Kind::Clasp: {
            TangleDiagram t = TangleDiagram::infinity();
            t.vtwists(-d.params[0]);
            t.htwists(d.params[1]);
            return t.numerator();
        }
        case Kind::Pretzel: {
            TangleDiagram acc;
            for (std::size_t i = 0; i < 3; ++i) {
                TangleDiagram t = TangleDiagram::infinity();
                t.vtwists(d.params[i]);
                acc = i == 0 ? t : acc.plus(t);
            }
            return acc.numerator();
        }
        case Kind::MontF: {
            const auto& x = d.params;
            return family_row(x[4], x[5]).plus(family_row(x[2], x[3])).plus(family_row(x[0], x[1])).numerator();
        }
        case Kind::G1:
        case Kind::G2: {
            const i64 k = d.params[0];
            const i64 s = k < 0 ? -1 : 1;
            TangleDiagram t = TangleDiagram::zero();
            t.htwists(2 * s);
            t.vtwists(d.kind == Kind::G1 ? 2 * s : s);
            t.htwists(k);
            return t.numerator();
        }
        case Kind::ConnectedSum: {
            r = build_unchecked(d.parts[0]);
            for (std::size_t i = 1; i < d.parts.size(); ++i) r = connected_sum(r, build_unchecked(d.parts[i]));
            return r;
        }
        case Kind::WithTrivialComponent:
            r = build_unchecked(d.inner());
            r.free_loops += 1;
            return r;
    }
    return r;
}

}  // namespace

PlanarDiagram build_diagram(const FamilyDatum& d, int limit) {
    validate(d);
    int n = template_crossings(d);
    if (n > limit) throw TooLarge(to_string(d) + " needs " + std::to_string(n) + " crossings, oracle limit is " + std::to_string(limit));
    return build_unchecked(d);
}

PlanarDiagram build_closure_diagram(const ClosureForm& cf) {
    PlanarDiagram out;
    out.free_loops = cf.free_loops;
    for (const auto& piece : cf.pieces) {
        PlanarDiagram pd;
        pd.free_loops = 1;
        for (const auto& s : piece) {
            PlanarDiagram sd;
            if (s.rational) {
                sd = TangleDiagram::from_fraction(Fraction(s.bridge.p, s.bridge.q)).numerator();
            } else {
                const auto& m = s.mont;
                const i64 k = m.e < 0 ? std::min<i64>(static_cast<i64>(m.tangles.size()), -m.e) : 0;
                TangleDiagram acc;
                for (std::size_t i = 0; i < m.tangles.size(); ++i) {
                    Fraction f = static_cast<i64>(i) < k ? m.tangles[i] - Fraction(1) : m.tangles[i];
                    TangleDiagram t = TangleDiagram::from_fraction(f);
                    acc = i == 0 ? t : acc.plus(t);
                }
                TangleDiagram tw = TangleDiagram::zero();
                tw.htwists(m.e + k);
                sd = acc.plus(tw).numerator();
            }
            pd = connected_sum(pd, sd);
        }
        out = disjoint_union(out, pd);
    }
    return out;
}

}  // namespace twistrec
