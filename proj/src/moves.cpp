#include "twistrec/moves.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <map>
#include <numeric>

namespace twistrec {

std::string to_string(Move m) {
    switch (m) {
        case Move::R1Add: return "R1+";
        case Move::R1Remove: return "R1-";
        case Move::R2Add: return "R2+";
        case Move::R2Remove: return "R2-";
        case Move::R3: return "R3";
    }
    return "?";
}

namespace {

using Slots = std::array<int, 4>;

int& at(PlanarDiagram& d, Dart x) { return d.crossings[static_cast<std::size_t>(x.first)].e[static_cast<std::size_t>(x.second)]; }
int at(const PlanarDiagram& d, Dart x) { return d.crossings[static_cast<std::size_t>(x.first)].e[static_cast<std::size_t>(x.second)]; }

// The other occurrence of the label at x.
Dart partner(const PlanarDiagram& d, Dart x) {
    const int label = at(d, x);
    for (int c = 0; c < d.size(); ++c)
        for (int s = 0; s < 4; ++s)
            if (Dart{c, s} != x && d.crossings[static_cast<std::size_t>(c)].e[static_cast<std::size_t>(s)] == label) return {c, s};
    throw std::logic_error("PD label occurs once");
}

int fresh_label(const PlanarDiagram& d) {
    int m = 0;
    for (const auto& c : d.crossings)
        for (int e : c.e) m = std::max(m, e);
    return m + 1;
}

bool over(Dart x) { return x.second % 2 == 1; }

// Entry slots of an oriented diagram: slot 0, and the over slot the strand enters by.
bool entry_slot(const Crossing& c, int s) { return s == 0 || s == (c.sign > 0 ? 3 : 1); }

// Orients r like d.  keep[c] is the index in r of crossing c of d, or -1 if it was removed.
// An edge that keeps its label and slot at a surviving crossing fixes its component's direction.
PlanarDiagram finish(const PlanarDiagram& r, const PlanarDiagram& d, const std::vector<int>& keep) {
    if (r.crossings.empty()) return r;
    std::vector<std::pair<int, int>> entries;
    for (int c = 0; c < d.size(); ++c) {
        const int nc = keep[static_cast<std::size_t>(c)];
        if (nc < 0) continue;
        const Crossing& x = d.crossings[static_cast<std::size_t>(c)];
        for (int s = 0; s < 4; ++s)
            if (entry_slot(x, s) && r.crossings[static_cast<std::size_t>(nc)].e[static_cast<std::size_t>(s)] == x.e[static_cast<std::size_t>(s)])
                entries.push_back({nc, s});
    }
    return oriented_along(r, entries, true);
}

std::vector<int> same_indices(const PlanarDiagram& d) {
    std::vector<int> keep(static_cast<std::size_t>(d.size()));
    std::iota(keep.begin(), keep.end(), 0);
    return keep;
}

std::vector<int> without(const PlanarDiagram& d, const std::vector<int>& drop) {
    std::vector<int> keep(static_cast<std::size_t>(d.size()));
    int next = 0;
    for (int c = 0; c < d.size(); ++c)
        keep[static_cast<std::size_t>(c)] = std::find(drop.begin(), drop.end(), c) != drop.end() ? -1 : next++;
    return keep;
}

// Deletes the listed crossings and joins the given label pairs through the gap.
PlanarDiagram splice(const PlanarDiagram& d, std::vector<int> drop, const std::vector<std::pair<int, int>>& joins) {
    std::map<int, int> parent;
    auto find = [&](int x) {
        while (parent.count(x) && parent[x] != x) x = parent[x];
        return x;
    };
    for (auto [a, b] : joins) {
        int ra = find(a), rb = find(b);
        parent.try_emplace(ra, ra);
        if (ra != rb) parent[rb] = ra;
    }
    std::sort(drop.begin(), drop.end());
    PlanarDiagram r;
    r.free_loops = d.free_loops;
    std::map<int, int> left;  // root -> remaining occurrences
    for (int c = 0; c < d.size(); ++c) {
        if (std::binary_search(drop.begin(), drop.end(), c)) continue;
        Crossing x = d.crossings[static_cast<std::size_t>(c)];
        for (int& e : x.e) {
            e = find(e);
            ++left[e];
        }
        r.crossings.push_back(x);
    }
    std::map<int, bool> roots;
    for (auto [a, b] : joins) roots[find(a)] = true;
    for (auto [root, _] : roots)
        if (!left.count(root)) ++r.free_loops;
    return r;
}

}  // namespace

std::vector<std::vector<Dart>> faces(const PlanarDiagram& d) {
    std::vector<std::vector<Dart>> out;
    std::vector<std::array<bool, 4>> used(static_cast<std::size_t>(d.size()), {false, false, false, false});
    for (int c = 0; c < d.size(); ++c)
        for (int s = 0; s < 4; ++s) {
            if (used[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)]) continue;
            std::vector<Dart> f;
            Dart x{c, s};
            while (!used[static_cast<std::size_t>(x.first)][static_cast<std::size_t>(x.second)]) {
                used[static_cast<std::size_t>(x.first)][static_cast<std::size_t>(x.second)] = true;
                f.push_back(x);
                Dart y = partner(d, x);
                x = {y.first, (y.second + 3) % 4};  // turn left
            }
            out.push_back(f);
        }
    return out;
}

PlanarDiagram r1_add(const PlanarDiagram& d, Dart a, int variant) {
    PlanarDiagram r = d;
    Dart b = partner(d, a);
    const int x = at(d, a);
    const int y = fresh_label(d), z = y + 1;
    at(r, b) = y;
    static const std::array<Slots, 4> shapes = {{{0, 2, 2, 1}, {0, 1, 2, 2}, {2, 0, 1, 2}, {2, 2, 1, 0}}};
    const Slots& s = shapes[static_cast<std::size_t>(variant & 3)];
    Crossing k;
    const int labels[3] = {x, y, z};
    for (int i = 0; i < 4; ++i) k.e[static_cast<std::size_t>(i)] = labels[s[static_cast<std::size_t>(i)]];
    r.crossings.push_back(k);
    return finish(r, d, same_indices(d));
}

std::optional<PlanarDiagram> r1_remove(const PlanarDiagram& d, int c) {
    const auto& e = d.crossings[static_cast<std::size_t>(c)].e;
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        if (e[static_cast<std::size_t>(i)] != e[static_cast<std::size_t>(j)]) continue;
        int a = e[static_cast<std::size_t>((i + 2) % 4)], b = e[static_cast<std::size_t>((i + 3) % 4)];
        if (a == e[static_cast<std::size_t>(i)] || b == e[static_cast<std::size_t>(i)]) continue;  // two loops: a free crossing figure eight
        PlanarDiagram r = splice(d, {c}, {{a, b}});
        return finish(r, d, without(d, {c}));
    }
    return std::nullopt;
}

std::optional<PlanarDiagram> r2_add(const PlanarDiagram& d, Dart a, Dart b, bool a_over) {
    if (a == b || at(d, a) == at(d, b)) return std::nullopt;
    PlanarDiagram r = d;
    const Dart a_end = partner(d, a), b_end = partner(d, b);
    const int a1 = at(d, a), b1 = at(d, b);
    const int base = fresh_label(d);
    const int a2 = base, a3 = base + 1, b2 = base + 2, b3 = base + 3;
    at(r, a_end) = a3;
    at(r, b_end) = b3;
    // With the face on the left of both edges, the a-strand meets the b-strand at P then Q,
    // and the b-strand meets them in the order Q, P.
    Crossing p, q;
    if (a_over) {
        p.e = {b2, a2, b3, a1};
        q.e = {b1, a2, b2, a3};
    } else {
        p.e = {a2, b3, a1, b2};
        q.e = {a2, b2, a3, b1};
    }
    r.crossings.push_back(p);
    r.crossings.push_back(q);
    return finish(r, d, same_indices(d));
}

std::optional<PlanarDiagram> r2_remove(const PlanarDiagram& d, const std::vector<Dart>& f) {
    if (f.size() != 2 || f[0].first == f[1].first) return std::nullopt;
    // Each corner holds one edge of each strand; find the slots of the two bigon edges.
    const Dart u = f[0], w = f[1];
    const Dart u_end = partner(d, u), w_end = partner(d, w);
    if (u_end.first != w.first || w_end.first != u.first) return std::nullopt;
    // Edge of u runs u -> u_end, edge of w runs w -> w_end: the two strands.
    if (over(u) != over(u_end) || over(w) != over(w_end) || over(u) == over(w)) return std::nullopt;
    auto opp = [&](Dart x) { return at(d, {x.first, (x.second + 2) % 4}); };
    const int s1a = opp(u), s1b = opp(u_end), s2a = opp(w), s2b = opp(w_end);
    PlanarDiagram r = splice(d, {u.first, w.first}, {{s1a, s1b}, {s2a, s2b}});
    return finish(r, d, without(d, {u.first, w.first}));
}

std::optional<PlanarDiagram> r3(const PlanarDiagram& d, const std::vector<Dart>& f, int which) {
    if (f.size() != 3) return std::nullopt;
    // Corners A, B, C in walk order; x = A->B moves past C.
    const Dart A = f[static_cast<std::size_t>(which % 3)], B0 = f[static_cast<std::size_t>((which + 1) % 3)],
               C0 = f[static_cast<std::size_t>((which + 2) % 3)];
    if (A.first == B0.first || B0.first == C0.first || A.first == C0.first) return std::nullopt;
    const Dart xB = partner(d, A);   // x at B
    const Dart yC = partner(d, B0);  // y at C
    const Dart zA = partner(d, C0);  // z at A
    if (xB.first != B0.first || yC.first != C0.first || zA.first != A.first) return std::nullopt;
    if (over(A) != over(xB)) return std::nullopt;  // the moving strand must pass over (or under) both
    auto slot = [](Dart x, int k) { return Dart{x.first, (x.second + k) % 4}; };
    const int x = at(d, A), y = at(d, B0), z = at(d, C0);
    const int alphaA = at(d, slot(A, 2)), gammaA = at(d, slot(zA, 2));
    const int alphaB = at(d, slot(xB, 2)), betaB = at(d, slot(B0, 2));
    const int betaC = at(d, slot(yC, 2)), gammaC = at(d, slot(C0, 2));
    PlanarDiagram r = d;
    at(r, slot(A, 2)) = x;
    at(r, A) = alphaB;
    at(r, slot(zA, 2)) = z;
    at(r, zA) = gammaC;
    at(r, xB) = alphaA;
    at(r, slot(xB, 2)) = x;
    at(r, slot(B0, 2)) = y;
    at(r, B0) = betaC;
    at(r, yC) = betaB;
    at(r, slot(yC, 2)) = y;
    at(r, C0) = gammaA;
    at(r, slot(C0, 2)) = z;
    // Each crossing slides along its own strands, so every entry slot stays an entry slot.
    std::vector<std::pair<int, int>> entries;
    for (int c = 0; c < d.size(); ++c)
        for (int k = 0; k < 4; ++k)
            if (entry_slot(d.crossings[static_cast<std::size_t>(c)], k)) entries.push_back({c, k});
    return oriented_along(r, entries, true);
}

std::optional<Move> random_move(PlanarDiagram& d, std::mt19937_64& rng, int grow_limit) {
    if (d.crossings.empty()) return std::nullopt;
    struct Option {
        Move m;
        std::function<std::optional<PlanarDiagram>()> apply;
    };
    std::vector<Option> opts;
    const auto fs = faces(d);
    const bool can_grow = d.size() + 2 <= grow_limit;
    for (int c = 0; c < d.size(); ++c)
        if (r1_remove(d, c)) opts.push_back({Move::R1Remove, [&, c] { return r1_remove(d, c); }});
    for (const auto& f : fs) {
        if (f.size() == 2) opts.push_back({Move::R2Remove, [&, f] { return r2_remove(d, f); }});
        if (f.size() == 3)
            for (int w = 0; w < 3; ++w)
                if (r3(d, f, w)) opts.push_back({Move::R3, [&, f, w] { return r3(d, f, w); }});
    }
    if (can_grow) {
        std::uniform_int_distribution<int> pick_c(0, d.size() - 1), pick_s(0, 3), pick_v(0, 3);
        Dart a{pick_c(rng), pick_s(rng)};
        int variant = pick_v(rng);
        opts.push_back({Move::R1Add, [&, a, variant] { return std::optional<PlanarDiagram>(r1_add(d, a, variant)); }});
        std::vector<std::size_t> big;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (fs[i].size() >= 2) big.push_back(i);
        if (!big.empty()) {
            const auto& f = fs[big[std::uniform_int_distribution<std::size_t>(0, big.size() - 1)(rng)]];
            std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
            Dart a2 = f[pick(rng)], b2 = f[pick(rng)];
            bool a_over = pick_v(rng) % 2 == 0;
            if (a2 != b2 && at(d, a2) != at(d, b2))
                opts.push_back({Move::R2Add, [&, a2, b2, a_over] { return r2_add(d, a2, b2, a_over); }});
        }
    }
    if (opts.empty()) return std::nullopt;
    const auto& o = opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
    auto r = o.apply();
    if (!r) return std::nullopt;
    d = *r;
    return o.m;
}

}  // namespace twistrec
