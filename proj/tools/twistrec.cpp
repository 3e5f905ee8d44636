// twistrec: classify, enumerate and count recombination products on C(2,v).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistrec/counting.hpp"
#include "twistrec/enumerator.hpp"
#include "twistrec/identify.hpp"
#include "twistrec/mcn.hpp"
#include "twistrec/tables.hpp"

using namespace twistrec;
using json = nlohmann::ordered_json;

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 3;

enum class Format { Text, Json, Csv };

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json envelope(const std::string& command) { return json{{"schema", 1}, {"command", command}}; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string component_text(int n) { return std::to_string(n) + (n == 1 ? " component" : " components"); }

int cmd_classify(const std::string& text, Format fmt) {
    FamilyDatum d = parse_datum(text);
    KnotIdentity id = identify_datum(d);
    int m = mcn(d);
    if (fmt == Format::Json) {
        json j = envelope("classify");
        j["datum"] = to_string(d);
        j["name"] = id.name;
        j["chirality"] = to_string(id.chirality);
        j["components"] = id.components;
        j["mcn"] = m;
        j["alternatives"] = id.alternatives;
        emit(j);
    } else if (fmt == Format::Csv) {
        std::cout << "datum,name,chirality,components,mcn\n"
                  << csv_field(to_string(d)) << "," << csv_field(id.name) << "," << to_string(id.chirality) << ","
                  << id.components << "," << m << "\n";
    } else {
        std::cout << describe(id) << ", MCN " << m << "\n";
    }
    return 0;
}

int cmd_mcn(const std::string& text, Format fmt) {
    FamilyDatum d = parse_datum(text);
    int m = mcn(d);
    if (fmt == Format::Json) {
        json j = envelope("mcn");
        j["datum"] = to_string(d);
        j["mcn"] = m;
        if (d.kind == Kind::MontF) {
            McnF f = mcn_F(d.p(0), d.p(1), d.p(2), d.p(3), d.p(4), d.p(5));
            j["rule"] = f.rule_id;
            j["exact"] = f.exact;
            j["resolution"] = f.resolution;
            if (f.resolution == "interval") j["interval"] = {f.lo, f.hi};
            j["suspect"] = f.suspect;
        }
        emit(j);
    } else if (fmt == Format::Csv) {
        std::cout << "datum,mcn\n" << csv_field(to_string(d)) << "," << m << "\n";
    } else {
        std::cout << m << "\n";
    }
    return 0;
}

Scenario scenario(const std::string& substrate, const std::string& recombinase, int rounds) {
    Scenario sc;
    sc.v = parse_substrate(substrate);
    sc.recombinase = parse_recombinase(recombinase);
    sc.rounds = rounds;
    if (rounds < 1) throw InvalidScenario("rounds must be at least 1");
    if (sc.recombinase == Recombinase::Tyrosine && rounds != 1) throw InvalidScenario("rounds applies to serine recombinases only");
    return sc;
}

json witness_json(const CountedIdentity& w) {
    return json{{"name", w.name}, {"components", w.components}, {"witness", to_string(w.witness)}, {"family", w.family}};
}

int cmd_enumerate(const Scenario& sc, std::optional<i64> cap, std::optional<int> n, Format fmt) {
    if (n) {
        CountReport r = enumerate_products_at_mcn(sc, *n, cap.value_or(10));
        if (fmt == Format::Json) {
            json j = envelope("enumerate");
            j["scenario"] = sc.to_string();
            j["mcn"] = r.n;
            j["distinct"] = r.distinct;
            j["products"] = json::array();
            for (const auto& w : r.witnesses) j["products"].push_back(witness_json(w));
            emit(j);
        } else if (fmt == Format::Csv) {
            std::cout << to_csv({r});
        } else {
            for (const auto& w : r.witnesses)
                std::cout << w.name << "\t" << component_text(w.components) << "\t" << to_string(w.witness) << "\n";
        }
        return 0;
    }
    auto terms = product_family(sc);
    if (!cap) {
        if (fmt == Format::Json) {
            json j = envelope("enumerate");
            j["scenario"] = sc.to_string();
            j["terms"] = json::array();
            for (const auto& t : terms) j["terms"].push_back(t.to_string());
            emit(j);
        } else {
            if (fmt == Format::Csv) std::cout << "term\n";
            for (const auto& t : terms) std::cout << (fmt == Format::Csv ? csv_field(t.to_string()) : t.to_string()) << "\n";
        }
        return 0;
    }
    json j = envelope("enumerate");
    j["scenario"] = sc.to_string();
    j["cap"] = *cap;
    j["instances"] = json::array();
    if (fmt == Format::Csv) std::cout << "term,datum\n";
    for (const auto& t : terms)
        for (const auto& d : instantiate(t, *cap)) {
            if (fmt == Format::Json) j["instances"].push_back({{"term", t.to_string()}, {"datum", to_string(d)}});
            else if (fmt == Format::Csv) std::cout << csv_field(t.to_string()) << "," << csv_field(to_string(d)) << "\n";
            else std::cout << to_string(d) << "\n";
        }
    if (fmt == Format::Json) emit(j);
    return 0;
}

int cmd_theorem5(const std::string& substrate, bool all, Format fmt) {
    i64 v = parse_substrate(substrate);
    auto groups = theorem5_identified(v, !all);
    const int target = substrate_mcn(v) + 1;
    if (fmt == Format::Json) {
        json j = envelope("theorem5");
        j["substrate"] = "C(2," + std::to_string(v) + ")";
        j["substrate_mcn"] = substrate_mcn(v);
        j["products"] = json::array();
        for (const auto& g : groups)
            j["products"].push_back({{"name", g.name},
                                     {"components", g.components},
                                     {"mcn", g.mcn},
                                     {"starred", g.mcn == target},
                                     {"witness", to_string(g.witness)},
                                     {"rows", g.patterns}});
        emit(j);
    } else if (fmt == Format::Csv) {
        std::cout << "name,components,mcn,starred,witness\n";
        for (const auto& g : groups)
            std::cout << csv_field(g.name) << "," << g.components << "," << g.mcn << "," << (g.mcn == target ? 1 : 0) << ","
                      << csv_field(to_string(g.witness)) << "\n";
    } else {
        for (const auto& g : groups) {
            std::cout << g.name << (g.mcn == target ? "*" : "") << "\t" << component_text(g.components) << "\tMCN " << g.mcn << "\t";
            for (std::size_t i = 0; i < g.patterns.size(); ++i) std::cout << (i ? ", " : "") << g.patterns[i];
            std::cout << "\n";
        }
    }
    return 0;
}

int cmd_tables(int which, Format fmt) {
    if (which == 7 && fmt == Format::Json) {
        json j = envelope("tables");
        j["table"] = 7;
        j["sections"] = json::array();
        for (i64 v : {5, 7}) {
            json s{{"substrate", "C(2," + std::to_string(v) + ")"}, {"crossings", substrate_mcn(v) + 1}, {"rows", json::array()}};
            for (const auto& r : table7_rows(v)) {
                json row{{"pattern", r.pattern}, {"name", r.name}, {"starred", r.starred}};
                if (!r.printed.empty()) row["printed"] = r.printed;
                s["rows"].push_back(row);
            }
            j["sections"].push_back(s);
        }
        emit(j);
        return 0;
    }
    std::string text = which == 1 ? table1() : which == 6 ? table6() : table7();
    if (fmt == Format::Json) {
        json j = envelope("tables");
        j["table"] = which;
        j["rows"] = json::array();
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) j["rows"].push_back(line);
        emit(j);
    } else {
        std::cout << text;
    }
    return 0;
}

int cmd_count(const Scenario& sc, int nmax, i64 cap, bool chiral, Format fmt) {
    CountOptions opt;
    opt.chiral = chiral;
    auto reports = growth_curve(sc, nmax, cap, opt);
    if (fmt == Format::Csv) {
        std::cout << to_csv(reports);
    } else if (fmt == Format::Json) {
        json j = envelope("count");
        j["scenario"] = sc.to_string();
        j["cap"] = cap;
        j["rows"] = json::array();
        for (const auto& r : reports) {
            json row{{"n", r.n}, {"distinct", r.distinct}, {"bound", r.bound}, {"g1", r.g1}, {"g2", r.g2}, {"products", json::array()}};
            for (const auto& w : r.witnesses) row["products"].push_back(witness_json(w));
            j["rows"].push_back(row);
        }
        emit(j);
    } else {
        std::cout << "n\tdistinct\tbound\tG1\tG2\n";
        for (const auto& r : reports) std::cout << r.n << "\t" << r.distinct << "\t" << r.bound << "\t" << r.g1 << "\t" << r.g2 << "\n";
    }
    return 0;
}

int cmd_jones(const std::string& path, Format fmt) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    PlanarDiagram d = parse_pd(ss.str());
    std::string v = jones_to_string(jones(d));
    if (fmt == Format::Json) {
        json j = envelope("oracle jones");
        j["file"] = path;
        j["crossings"] = d.size();
        j["components"] = component_count(d);
        j["jones"] = v;
        emit(j);
    } else if (fmt == Format::Csv) {
        std::cout << "file,jones\n" << csv_field(path) << "," << csv_field(v) << "\n";
    } else {
        std::cout << v << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Products of site-specific recombination on twist knots C(2,v)"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

    std::string datum;
    auto* classify = app.add_subcommand("classify", "Name a knot or link datum");
    classify->add_option("datum", datum)->required();
    auto* mcn_cmd = app.add_subcommand("mcn", "Minimal crossing number of a datum");
    mcn_cmd->add_option("datum", datum)->required();

    std::string substrate, recombinase;
    int rounds = 1;
    std::optional<i64> cap;
    std::optional<int> at_mcn;
    auto* enumerate = app.add_subcommand("enumerate", "List product families or products");
    enumerate->add_option("--substrate", substrate, "C(2,v)")->required();
    enumerate->add_option("--recombinase", recombinase, "tyrosine or serine")->required();
    enumerate->add_option("--rounds", rounds, "processive rounds (serine)");
    enumerate->add_option("--cap", cap, "bound on |parameter|");
    enumerate->add_option("--mcn", at_mcn, "only products of this MCN, named and deduplicated");

    bool all = false;
    auto* theorem5 = app.add_subcommand("theorem5", "Products whose MCN is one more than the substrate's");
    theorem5->add_option("--substrate", substrate, "C(2,v)")->required();
    theorem5->add_flag("--all", all, "include rows of other crossing numbers");

    int table = 0;
    auto* tables = app.add_subcommand("tables", "Regenerate a summary table");
    tables->add_option("table", table)->required()->check(CLI::IsMember({1, 6, 7}));

    int nmax = 8;
    i64 count_cap = 10;
    bool chiral = false;
    auto* count = app.add_subcommand("count", "Distinct products per MCN against the growth bound");
    count->add_option("--substrate", substrate, "C(2,v)")->required();
    count->add_option("--recombinase", recombinase, "tyrosine or serine")->required();
    count->add_option("--rounds", rounds, "processive rounds (serine)");
    count->add_option("--nmax", nmax)->required();
    count->add_option("--cap", count_cap)->required();
    count->add_flag("--chiral", chiral, "count mirror images separately");

    std::string pd_file;
    auto* oracle = app.add_subcommand("oracle", "Diagram invariants");
    oracle->require_subcommand(1);
    auto* jones_cmd = oracle->add_subcommand("jones", "Jones polynomial of a PD code file");
    jones_cmd->add_option("pd-file", pd_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    const Format fmt = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
    try {
        if (*classify) return cmd_classify(datum, fmt);
        if (*mcn_cmd) return cmd_mcn(datum, fmt);
        if (*enumerate) return cmd_enumerate(scenario(substrate, recombinase, rounds), cap, at_mcn, fmt);
        if (*theorem5) return cmd_theorem5(substrate, all, fmt);
        if (*tables) return cmd_tables(table, fmt);
        if (*count) return cmd_count(scenario(substrate, recombinase, rounds), nmax, count_cap, chiral, fmt);
        if (*jones_cmd) return cmd_jones(pd_file, fmt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const TooLarge& e) {
        std::cerr << "error: " << e.what() << " (raise TWISTREC_ORACLE_LIMIT)\n";
        return kInputError;
    } catch (const CapTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kInputError;
}
