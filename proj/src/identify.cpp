#include "twistrec/identify.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "twistrec/embedded_data.hpp"

namespace twistrec {

namespace {

LaurentPoly delta() { return LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1); }

LaurentPoly unlink_key(int n) {
    LaurentPoly r = LaurentPoly::monomial(0);
    for (int i = 1; i < n; ++i) r = r * delta();
    return r.unit_normalized();
}

struct Part {
    const DictEntry* entry = nullptr;  // nullptr: a trivial split component
    bool mirrored = false;
};

std::string join_parts(const std::vector<Part>& parts, int extra_loops) {
    std::vector<std::string> names;
    int loops = extra_loops;
    for (const auto& p : parts) {
        if (p.entry) names.push_back(p.entry->name);
        else ++loops;
    }
    std::sort(names.begin(), names.end());
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "#" : "") + names[i];
    if (s.empty()) {
        if (loops == 0) return "unknot";
        return "unlink_" + std::to_string(loops + 1);
    }
    for (int i = 0; i < loops; ++i) s += "+O";
    return s;
}

Chirality combine_chirality(const std::vector<Part>& parts) {
    bool pos = false, neg = false;
    for (const auto& p : parts) {
        if (!p.entry || p.entry->amphichiral) continue;
        (p.mirrored ? neg : pos) = true;
    }
    if (pos && neg) return Chirality::Unknown;
    if (pos) return Chirality::Positive;
    if (neg) return Chirality::Negative;
    return Chirality::Amphichiral;
}

class Decomposer {
public:
    explicit Decomposer(const Dictionary& dict) : dict_(dict) {}

    void run(const LaurentPoly& p, int comps, std::size_t start, std::vector<Part>& cur, int depth, bool allow_o = true) {
        if (found_.size() >= 6 || depth > 5) return;
        if (p == LaurentPoly::monomial(0) && comps == 1) {
            found_.push_back(cur);
            return;
        }
        if (comps >= 2 && allow_o) {
            LaurentPoly q;
            if (p.divide_exact(delta(), q)) {
                cur.push_back({});
                run(q.unit_normalized(), comps - 1, 0, cur, depth + 1, true);
                cur.pop_back();
            }
        }
        const auto& es = dict_.entries();
        for (std::size_t i = start; i < es.size(); ++i) {
            const auto& e = es[i];
            if (e.components > comps) continue;
            if (e.key.span() > p.span()) continue;
            for (int m = 0; m < (e.amphichiral ? 1 : 2); ++m) {
                const LaurentPoly& k = m ? e.mirror_key : e.key;
                LaurentPoly q;
                if (!p.divide_exact(k, q)) continue;
                cur.push_back({&e, m == 1});
                run(q.unit_normalized(), comps - e.components + 1, i, cur, depth + 1, false);
                cur.pop_back();
            }
        }
    }

    const std::vector<std::vector<Part>>& found() const { return found_; }

private:
    const Dictionary& dict_;
    std::vector<std::vector<Part>> found_;
};

}  // namespace

std::string to_string(Chirality c) {
    switch (c) {
        case Chirality::Positive: return "positive";
        case Chirality::Negative: return "negative";
        case Chirality::Amphichiral: return "amphichiral";
        case Chirality::Unknown: return "unoriented-unknown";
    }
    return "?";
}

LaurentPoly unoriented_key(const LaurentPoly& bracket) {
    LaurentPoly a = bracket.unit_normalized(), b = bracket.inverted().unit_normalized();
    return b < a ? b : a;
}

const Dictionary& Dictionary::instance() {
    static const Dictionary d;
    return d;
}

Dictionary::Dictionary() {
    std::istringstream in(embedded_two_bridge_csv());
    std::string line;
    auto add = [&](const std::string& name, i64 p, i64 q) {
        DictEntry e;
        e.name = name;
        e.bridge = {p, q};
        e.components = p % 2 == 0 ? 2 : 1;
        e.amphichiral = (q * q + 1) % p == 0;
        PlanarDiagram d = TangleDiagram::from_fraction(Fraction(p, q)).numerator();
        LaurentPoly b = kauffman_bracket(d, 64);
        e.key = b.unit_normalized();
        e.mirror_key = b.inverted().unit_normalized();
        by_bridge_[two_bridge_canonical(e.bridge, true)] = entries_.size();
        entries_.push_back(std::move(e));
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("name", 0) == 0) continue;
        std::istringstream ls(line);
        std::string name, ps, qs;
        std::getline(ls, name, ',');
        std::getline(ls, ps, ',');
        std::getline(ls, qs, ',');
        add(name, std::stoll(ps), std::stoll(qs));
    }
    for (i64 m = 2; m <= 13; ++m)
        if (!by_bridge_.count(TwoBridge{m, 1})) add("T(2," + std::to_string(m) + ")", m, 1);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            const auto& a = entries_[i];
            const auto& b = entries_[j];
            if (a.components == b.components && (a.key == b.key || a.key == b.mirror_key))
                collisions_.push_back({a.name, b.name});
        }
}

const DictEntry* Dictionary::by_bridge(const TwoBridge& b) const {
    auto it = by_bridge_.find(two_bridge_canonical(b, true));
    return it == by_bridge_.end() ? nullptr : &entries_[it->second];
}

const DictEntry* Dictionary::by_name(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return &e;
    return nullptr;
}

std::vector<const DictEntry*> Dictionary::by_key(const LaurentPoly& k, int components) const {
    std::vector<const DictEntry*> out;
    for (const auto& e : entries_)
        if (e.components == components && (e.key == k || e.mirror_key == k)) out.push_back(&e);
    return out;
}

KnotIdentity identify_invariants(const LaurentPoly& bracket, int components) {
    const Dictionary& dict = Dictionary::instance();
    KnotIdentity id;
    id.components = components;
    const LaurentPoly k = bracket.unit_normalized();
    id.bracket_key = unoriented_key(bracket);
    if (k == unlink_key(components)) {
        id.name = components == 1 ? "unknot" : "unlink_" + std::to_string(components);
        id.chirality = Chirality::Amphichiral;
        return id;
    }
    auto primes = dict.by_key(k, components);
    Decomposer dec(dict);
    std::vector<Part> cur;
    dec.run(k, components, 0, cur, 0);
    std::map<std::string, std::vector<Part>> names;
    for (const auto& sol : dec.found()) names.emplace(join_parts(sol, 0), sol);
    if (!primes.empty()) {
        const DictEntry* e = primes[0];
        id.name = e->name;
        bool pos = k == e->key, neg = k == e->mirror_key;
        if (pos && neg) id.chirality = e->amphichiral ? Chirality::Amphichiral : Chirality::Unknown;
        else id.chirality = pos ? Chirality::Positive : Chirality::Negative;
        for (std::size_t i = 1; i < primes.size(); ++i) id.alternatives.push_back(primes[i]->name);
        // Composites sharing the bracket of a prime (4_1#5_2 and 9_12, for one).
        for (const auto& [name, sol] : names)
            if (sol.size() > 1) id.alternatives.push_back(name);
        return id;
    }
    if (names.empty()) {
        id.name = "unidentified";
        return id;
    }
    auto it = names.begin();
    id.name = it->first;
    id.chirality = combine_chirality(it->second);
    for (++it; it != names.end(); ++it) id.alternatives.push_back(it->first);
    return id;
}

KnotIdentity identify(const PlanarDiagram& d, int limit) {
    return identify_invariants(kauffman_bracket(d, limit), component_count(d));
}

KnotIdentity identify_closure(const ClosureForm& cf) {
    const Dictionary& dict = Dictionary::instance();
    KnotIdentity id;
    id.components = component_count(build_closure_diagram(cf));
    std::vector<std::string> pieces;
    std::vector<Part> parts;
    bool unknown = false;
    for (const auto& piece : cf.pieces) {
        std::vector<std::string> names;
        for (const auto& s : piece) {
            if (!s.rational) {
                unknown = true;
                continue;
            }
            const DictEntry* e = dict.by_bridge(s.bridge);
            if (!e) {
                unknown = true;
                continue;
            }
            TwoBridge mine = two_bridge_canonical(s.bridge, false);
            bool pos = mine == two_bridge_canonical(e->bridge, false);
            bool neg = mine == two_bridge_canonical(two_bridge_mirror(e->bridge), false);
            parts.push_back({e, neg && !pos});
            names.push_back(e->name);
        }
        std::sort(names.begin(), names.end());
        std::string s;
        for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "#" : "") + names[i];
        pieces.push_back(s);
    }
    if (unknown) {
        id.name = "unidentified";
        return id;
    }
    if (pieces.size() > 1) {
        std::sort(pieces.begin(), pieces.end());
        std::string s = "split(";
        for (std::size_t i = 0; i < pieces.size(); ++i) s += (i ? "," : "") + pieces[i];
        id.name = s + ")";
        for (int i = 0; i < cf.free_loops; ++i) id.name += "+O";
    } else {
        int loops = cf.free_loops - (pieces.empty() ? 1 : 0);
        id.name = join_parts(parts, loops);
    }
    id.chirality = combine_chirality(parts);
    return id;
}

KnotIdentity identify_datum(const FamilyDatum& d, int limit) {
    KnotIdentity id = identify(build_diagram(d, limit), limit);
    if (!id.alternatives.empty()) {
        ClosureForm cf = closure_form(d);
        bool rational = cf.pieces.size() == 1 && cf.free_loops == 0;
        for (const auto& piece : cf.pieces)
            for (const auto& s : piece) rational = rational && s.rational;
        if (rational) {
            KnotIdentity exact = identify_closure(cf);
            if (exact.identified()) {
                exact.alternatives.clear();
                exact.bracket_key = id.bracket_key;
                return exact;
            }
        }
    }
    return id;
}

std::string canonical_name(const std::string& name) {
    std::string core = name;
    int loops = 0;
    while (core.size() > 2 && core.compare(core.size() - 2, 2, "+O") == 0) {
        core.resize(core.size() - 2);
        ++loops;
    }
    std::vector<std::string> parts;
    std::istringstream in(core);
    std::string p;
    while (std::getline(in, p, '#')) parts.push_back(p);
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "#" : "") + parts[i];
    for (int i = 0; i < loops; ++i) s += "+O";
    return s;
}

std::string describe(const KnotIdentity& id) {
    std::string c;
    switch (id.chirality) {
        case Chirality::Positive: c = "(+)"; break;
        case Chirality::Negative: c = "(-)"; break;
        case Chirality::Amphichiral: c = "(amphichiral)"; break;
        case Chirality::Unknown: c = "(chirality unknown)"; break;
    }
    std::string s = id.name + " " + c + ", " + std::to_string(id.components) + (id.components == 1 ? " component" : " components");
    if (!id.alternatives.empty()) {
        s += " [also matches:";
        for (const auto& a : id.alternatives) s += " " + a;
        s += "]";
    }
    return s;
}

}  // namespace twistrec
