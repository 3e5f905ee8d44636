#include "twistrec/datum.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "twistrec/diagram.hpp"

namespace twistrec {

namespace {

i64 sgn(i64 x) { return (x > 0) - (x < 0); }
i64 iabs(i64 x) { return x < 0 ? -x : x; }

const char* kind_label(Kind k) {
    switch (k) {
        case Kind::Unknot: return "unknot";
        case Kind::Unlink: return "unlink";
        case Kind::Torus: return "T";
        case Kind::Clasp: return "C";
        case Kind::Pretzel: return "K";
        case Kind::MontF: return "F";
        case Kind::G1: return "G1";
        case Kind::G2: return "G2";
        case Kind::ConnectedSum: return "#";
        case Kind::WithTrivialComponent: return "+O";
    }
    return "?";
}

std::size_t arity(Kind k) {
    switch (k) {
        case Kind::Unlink: case Kind::Torus: case Kind::G1: case Kind::G2: return 1;
        case Kind::Clasp: return 2;
        case Kind::Pretzel: return 3;
        case Kind::MontF: return 6;
        default: return 0;
    }
}

class Parser {
public:
    explicit Parser(const std::string& s) {
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) src_.push_back(c);
    }

    FamilyDatum parse() {
        FamilyDatum d = parse_sum();
        if (pos_ != src_.size()) fail("trailing characters");
        return d;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw MalformedDatum("cannot parse datum '" + src_ + "' at " + std::to_string(pos_) + ": " + why);
    }
    bool eat(const std::string& tok) {
        if (src_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    i64 integer() {
        std::size_t start = pos_;
        if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start || !std::isdigit(static_cast<unsigned char>(src_[pos_ - 1]))) fail("expected integer");
        try {
            return std::stoll(src_.substr(start, pos_ - start));
        } catch (const std::out_of_range&) {
            fail("integer out of range");
        }
    }
    std::vector<i64> args(std::size_t n) {
        if (!eat("(")) fail("expected '('");
        std::vector<i64> v;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0 && !eat(",")) fail("expected ','");
            v.push_back(integer());
        }
        if (!eat(")")) fail("expected ')'");
        return v;
    }

    FamilyDatum parse_sum() {
        std::vector<FamilyDatum> parts{parse_atom_with_o()};
        while (eat("#")) parts.push_back(parse_atom_with_o());
        FamilyDatum d = parts.size() == 1 ? parts[0] : FamilyDatum::sum(parts);
        // A trailing +O after the last summand binds to the whole sum.
        if (parts.size() > 1 && parts.back().kind == Kind::WithTrivialComponent && !last_parenthesized_) {
            FamilyDatum last = parts.back();
            int loops = 0;
            while (last.kind == Kind::WithTrivialComponent) {
                last = last.inner();
                ++loops;
            }
            d.parts.back() = last;
            for (int i = 0; i < loops; ++i) d = FamilyDatum::plus_o(d);
        }
        return d;
    }

    FamilyDatum parse_atom_with_o() {
        last_parenthesized_ = false;
        FamilyDatum d = parse_atom();
        while (eat("+O")) d = FamilyDatum::plus_o(d);
        return d;
    }

    FamilyDatum parse_atom() {
        if (eat("(")) {
            FamilyDatum d = parse_sum();
            if (!eat(")")) fail("expected ')'");
            bool more = src_.compare(pos_, 2, "+O") == 0;
            last_parenthesized_ = !more;
            return d;
        }
        if (eat("unknot")) return FamilyDatum::unknot();
        if (eat("unlink")) return {Kind::Unlink, args(1), {}};
        if (eat("T")) {
            auto a = args(2);
            if (a[0] != 2) fail("only T(2,m) torus links are supported");
            return FamilyDatum::torus(a[1]);
        }
        if (eat("G1")) return {Kind::G1, args(1), {}};
        if (eat("G2")) return {Kind::G2, args(1), {}};
        if (eat("C")) return {Kind::Clasp, args(2), {}};
        if (eat("K")) return {Kind::Pretzel, args(3), {}};
        if (eat("F")) return {Kind::MontF, args(6), {}};
        fail("unknown family");
    }

    std::string src_;
    std::size_t pos_ = 0;
    bool last_parenthesized_ = false;
};

std::string join_params(const std::vector<i64>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

ClosureForm combine_sum(ClosureForm a, const ClosureForm& b) {
    if (b.pieces.empty()) {
        a.free_loops += std::max(0, b.free_loops - 1);
        return a;
    }
    if (a.pieces.empty()) {
        ClosureForm r = b;
        r.free_loops += std::max(0, a.free_loops - 1);
        return r;
    }
    a.pieces[0].insert(a.pieces[0].end(), b.pieces[0].begin(), b.pieces[0].end());
    a.pieces.insert(a.pieces.end(), b.pieces.begin() + 1, b.pieces.end());
    a.free_loops += b.free_loops;
    return a;
}

}  // namespace

int compare(const FamilyDatum& a, const FamilyDatum& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (a.params != b.params) return a.params < b.params ? -1 : 1;
    for (std::size_t i = 0; i < std::min(a.parts.size(), b.parts.size()); ++i)
        if (int c = compare(a.parts[i], b.parts[i])) return c;
    if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size() ? -1 : 1;
    return 0;
}

void validate(const FamilyDatum& d) {
    if (d.params.size() != arity(d.kind))
        throw MalformedDatum(std::string("wrong parameter count for ") + kind_label(d.kind));
    switch (d.kind) {
        case Kind::Unlink:
            if (d.params[0] < 2) throw MalformedDatum("unlink needs at least 2 components");
            break;
        case Kind::Clasp:
            if (iabs(d.params[0]) <= 1) throw MalformedDatum("clasp row r must not be 0 or +-1");
            if (d.params[1] == 0) throw MalformedDatum("clasp row v must be nonzero");
            break;
        case Kind::ConnectedSum:
            if (d.parts.size() < 2) throw MalformedDatum("connected sum needs at least two summands");
            for (const auto& x : d.parts) validate(x);
            break;
        case Kind::WithTrivialComponent:
            if (d.parts.size() != 1) throw MalformedDatum("+O wraps exactly one datum");
            validate(d.parts[0]);
            break;
        default:
            break;
    }
}

FamilyDatum parse_datum(const std::string& text) {
    FamilyDatum d = Parser(text).parse();
    validate(d);
    return d;
}

std::string to_string(const FamilyDatum& d) {
    switch (d.kind) {
        case Kind::Unknot: return "unknot";
        case Kind::Unlink: return "unlink(" + std::to_string(d.params[0]) + ")";
        case Kind::Torus: return "T(2," + std::to_string(d.params[0]) + ")";
        case Kind::Clasp: return "C(" + join_params(d.params) + ")";
        case Kind::Pretzel: return "K(" + join_params(d.params) + ")";
        case Kind::MontF: return "F(" + join_params(d.params) + ")";
        case Kind::G1: return "G1(" + std::to_string(d.params[0]) + ")";
        case Kind::G2: return "G2(" + std::to_string(d.params[0]) + ")";
        case Kind::ConnectedSum: {
            std::string s;
            for (std::size_t i = 0; i < d.parts.size(); ++i) {
                if (i) s += "#";
                const auto& x = d.parts[i];
                bool wrap = x.kind == Kind::ConnectedSum || x.kind == Kind::WithTrivialComponent;
                s += wrap ? "(" + to_string(x) + ")" : to_string(x);
            }
            return s;
        }
        case Kind::WithTrivialComponent: return to_string(d.inner()) + "+O";
    }
    return "?";
}

FamilyDatum normalize(const FamilyDatum& d) {
    validate(d);
    switch (d.kind) {
        case Kind::Unknot:
            return d;
        case Kind::Unlink:
            return d;
        case Kind::Torus: {
            i64 m = d.params[0];
            if (iabs(m) == 1) return FamilyDatum::unknot();
            if (m == 0) return FamilyDatum::unlink(2);
            return d;
        }
        case Kind::Clasp: {
            i64 r = d.params[0], v = d.params[1];
            if (r == -2) {
                // Flipping the top loop turns the -2 clasp into +2 and shifts the twist row.
                r = 2;
                v = v + 1;
                if (v == 0) return FamilyDatum::unknot();
            }
            if (v == sgn(r)) return normalize(FamilyDatum::torus(r - sgn(r)));
            return FamilyDatum::clasp(r, v);
        }
        case Kind::Pretzel: {
            auto p = d.params;
            std::sort(p.begin(), p.end());
            return {Kind::Pretzel, p, {}};
        }
        case Kind::MontF:
        case Kind::G1:
        case Kind::G2:
            return d;
        case Kind::ConnectedSum: {
            std::vector<FamilyDatum> flat;
            int loops = 0;
            std::vector<FamilyDatum> todo(d.parts.rbegin(), d.parts.rend());
            while (!todo.empty()) {
                FamilyDatum x = normalize(todo.back());
                todo.pop_back();
                while (x.kind == Kind::WithTrivialComponent) {
                    ++loops;
                    x = x.inner();
                }
                if (x.kind == Kind::Unknot) continue;
                if (x.kind == Kind::Unlink) {
                    loops += static_cast<int>(x.params[0]) - 1;
                    continue;
                }
                if (x.kind == Kind::ConnectedSum) {
                    for (auto it = x.parts.rbegin(); it != x.parts.rend(); ++it) todo.push_back(*it);
                    continue;
                }
                flat.push_back(x);
            }
            std::sort(flat.begin(), flat.end());
            FamilyDatum r = flat.empty() ? FamilyDatum::unknot()
                          : flat.size() == 1 ? flat[0]
                                             : FamilyDatum::sum(flat);
            for (int i = 0; i < loops; ++i) r = normalize(FamilyDatum::plus_o(r));
            return r;
        }
        case Kind::WithTrivialComponent: {
            FamilyDatum in = normalize(d.inner());
            if (in.kind == Kind::Unknot) return FamilyDatum::unlink(2);
            if (in.kind == Kind::Unlink) return FamilyDatum::unlink(in.params[0] + 1);
            return FamilyDatum::plus_o(in);
        }
    }
    return d;
}

FamilyDatum mirror(const FamilyDatum& d) {
    FamilyDatum r = d;
    if (d.kind != Kind::Unlink)
        for (auto& x : r.params) x = -x;
    for (auto& x : r.parts) x = mirror(x);
    return r;
}

int components_of(const FamilyDatum& d) {
    switch (d.kind) {
        case Kind::Unknot: return 1;
        case Kind::Unlink: return static_cast<int>(d.params[0]);
        case Kind::Torus: return d.params[0] == 0 ? 2 : (iabs(d.params[0]) % 2 == 1 ? 1 : 2);
        case Kind::G1:
        case Kind::G2: return iabs(d.params[0]) % 2 == 1 ? 1 : 2;
        case Kind::ConnectedSum: {
            int c = 0;
            for (const auto& x : d.parts) c += components_of(x);
            return c - static_cast<int>(d.parts.size()) + 1;
        }
        case Kind::WithTrivialComponent: return components_of(d.inner()) + 1;
        default: return component_count(build_diagram(d, 1 << 20));
    }
}

int template_crossings(const FamilyDatum& d) {
    int c = 0;
    switch (d.kind) {
        case Kind::G1: return 4 + static_cast<int>(iabs(d.params[0]));
        case Kind::G2: return 3 + static_cast<int>(iabs(d.params[0]));
        case Kind::ConnectedSum:
        case Kind::WithTrivialComponent:
            for (const auto& x : d.parts) c += template_crossings(x);
            return c;
        case Kind::Unlink:
            return 0;
        default:
            for (auto x : d.params) c += static_cast<int>(iabs(x));
            return c;
    }
}

bool closure_tangles(const FamilyDatum& d, std::vector<Fraction>& out) {
    out.clear();
    auto inv = [](i64 a) { return a == 0 ? Fraction::infinity() : Fraction(1, a); };
    switch (d.kind) {
        case Kind::Torus:
            out = {Fraction(d.params[0])};
            return true;
        case Kind::Clasp:
            out = {Fraction(d.params[1]) - Fraction(1, d.params[0])};
            return true;
        case Kind::Pretzel:
            out = {inv(d.params[0]), inv(d.params[1]), inv(d.params[2])};
            return true;
        case Kind::MontF: {
            const auto& x = d.params;
            out = {family_row_fraction(x[4], x[5]), family_row_fraction(x[2], x[3]), family_row_fraction(x[0], x[1])};
            return true;
        }
        case Kind::G1:
        case Kind::G2: {
            i64 k = d.params[0];
            i64 s = k < 0 ? -1 : 1;
            Fraction core = d.kind == Kind::G1 ? Fraction(2, 5) : Fraction(2, 3);
            Fraction f = Fraction(iabs(k)) + core;
            out = {s < 0 ? -f : f};
            return true;
        }
        default:
            return false;
    }
}

ClosureForm closure_form(const FamilyDatum& d) {
    std::vector<Fraction> tangles;
    if (closure_tangles(d, tangles)) return numerator_closure(tangles);
    ClosureForm cf;
    switch (d.kind) {
        case Kind::Unknot:
            cf.free_loops = 1;
            return cf;
        case Kind::Unlink:
            cf.free_loops = static_cast<int>(d.params[0]);
            return cf;
        case Kind::ConnectedSum: {
            cf = closure_form(d.parts[0]);
            for (std::size_t i = 1; i < d.parts.size(); ++i) cf = combine_sum(cf, closure_form(d.parts[i]));
            return cf;
        }
        case Kind::WithTrivialComponent:
            cf = closure_form(d.inner());
            cf.free_loops += 1;
            return cf;
        default:
            throw MalformedDatum("closure_form: unsupported datum");
    }
}

}  // namespace twistrec
