#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nesto/analysis.hpp"
#include "nesto/gammacomplex.hpp"
#include "nesto/npcomplexes.hpp"
#include "nesto/oracle.hpp"
#include "nesto/ordering.hpp"
#include "nesto/polyvec.hpp"
#include "nesto/setcore.hpp"

namespace {

constexpr int kExitError = 1;   // a computation-level failure (non-flag input, mismatch)
constexpr int kExitParse = 2;   // I/O or parse problems

struct Selector {
    std::string kind;
    int n = 0;
};

std::optional<Selector> parse_selector(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string kind = arg.substr(0, colon);
    if (kind != "kn" && kind != "path" && kind != "cyc" && kind != "star" && kind != "sn" &&
        kind != "s312" && kind != "pn")
        return std::nullopt;
    try {
        std::size_t used = 0;
        const int n = std::stoi(arg.substr(colon + 1), &used);
        if (used != arg.size() - colon - 1 || n < 2)
            throw nesto::ParseError("selector needs an integer N >= 2 in '" + arg + "'");
        return Selector{kind, n};
    } catch (const nesto::ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw nesto::ParseError("bad selector '" + arg + "'");
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nesto::ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw nesto::ParseError("cannot write " + out_path);
    out << text;
}

nesto::BuildingSet named_building_set(const Selector& sel) {
    if (sel.kind == "kn") return nesto::building_set_complete(sel.n);
    if (sel.kind == "path") return nesto::building_set_path(sel.n);
    if (sel.kind == "cyc") return nesto::building_set_cycle(sel.n);
    if (sel.kind == "star") return nesto::building_set_star(sel.n);
    throw nesto::ParseError("selector '" + sel.kind + "' does not name a building set");
}

// Commands other than `bset` consume building-set files (or selectors).
nesto::BuildingSet load_building_set(const std::string& arg) {
    if (auto sel = parse_selector(arg)) return named_building_set(*sel);
    return nesto::building_set_from_text(slurp(arg));
}

nesto::FlagOrdering resolve_ordering(const nesto::BuildingSet& b, const std::string& spec,
                                     std::uint64_t seed) {
    if (spec == "auto") {
        (void)seed;
        return nesto::find_flag_ordering(b, nesto::OrderingStrategy::lex());
    }
    nesto::FlagOrdering o = [&]() {
        if (spec == "kn") return nesto::ordering_kn(b.n());
        if (spec == "path") return nesto::ordering_pathn(b.n());
        if (spec == "star") return nesto::ordering_star(b.n());
        nesto::FlagOrdering parsed = nesto::ordering_from_text(slurp(spec));
        const nesto::OrderingCheck check = nesto::verify_flag_ordering(parsed);
        if (!check.ok) throw nesto::ParseError("ordering file invalid: " + check.message);
        return parsed;
    }();
    if (!(o.building == b))
        throw nesto::ParseError("ordering is for a different building set than the input");
    return o;
}

int run(int argc, char** argv) {
    CLI::App app{"building sets, nestohedron gamma-vectors, and their flag complexes"};
    app.require_subcommand(1);

    // bset
    auto* bset = app.add_subcommand("bset", "emit a building set (from a selector or a graph file)");
    std::string bset_input, bset_out;
    bset->add_option("input", bset_input, "kn:N | path:N | cyc:N | star:N | graph file")->required();
    bset->add_option("--out", bset_out, "output path (default stdout)");

    // gamma
    auto* gamma = app.add_subcommand("gamma", "compute the gamma-vector of a building set");
    std::string gamma_input, gamma_method = "nested", gamma_ordering = "auto";
    std::uint64_t gamma_seed = 0;
    gamma->add_option("input", gamma_input, "building-set file or selector")->required();
    gamma->add_option("--method", gamma_method, "nested | volodin | complex")
        ->check(CLI::IsMember({"nested", "volodin", "complex"}));
    gamma->add_option("--ordering", gamma_ordering, "auto | kn | path | star | ordering file");
    gamma->add_option("--seed", gamma_seed, "seed for randomized choices (default 0)");

    // ordering
    auto* ordering = app.add_subcommand("ordering", "find or verify flag orderings");
    std::string ord_mode, ord_input, ord_file, ord_strategy = "lex", ord_out;
    std::uint64_t ord_seed = 0;
    ordering->add_option("mode", ord_mode, "find | verify")->required()
        ->check(CLI::IsMember({"find", "verify"}));
    ordering->add_option("input", ord_input, "building-set file or selector")->required();
    ordering->add_option("file", ord_file, "ordering file (verify mode)");
    ordering->add_option("--strategy", ord_strategy, "lex | random")
        ->check(CLI::IsMember({"lex", "random"}));
    ordering->add_option("--seed", ord_seed, "seed for the random strategy (default 0)");
    ordering->add_option("--out", ord_out, "output path (default stdout)");

    // complex
    auto* complexc = app.add_subcommand("complex", "build the gamma complex of an ordering");
    std::string cx_input, cx_ordering = "auto", cx_out;
    std::uint64_t cx_seed = 0;
    bool cx_dot = false;
    complexc->add_option("input", cx_input, "building-set file or selector")->required();
    complexc->add_option("--ordering", cx_ordering, "auto | kn | path | star | ordering file");
    complexc->add_option("--seed", cx_seed, "seed (default 0)");
    complexc->add_flag("--dot", cx_dot, "emit DOT instead of the plain listing");
    complexc->add_option("--out", cx_out, "output path (default stdout)");

    // np
    auto* np = app.add_subcommand("np", "comparison complexes: sn:N, s312:N, pn:N");
    std::string np_sel, np_out;
    bool np_dot = false;
    np->add_option("selector", np_sel, "sn:N | s312:N | pn:N")->required();
    np->add_flag("--dot", np_dot, "emit DOT instead of the plain listing");
    np->add_option("--out", np_out, "output path (default stdout)");

    // compare
    auto* compare = app.add_subcommand("compare", "isomorphism test for two complex files");
    std::string cmp_a, cmp_b;
    compare->add_option("a", cmp_a, "first complex file")->required();
    compare->add_option("b", cmp_b, "second complex file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "triple agreement report for a building set");
    std::string ver_input, ver_format = "text", ver_out;
    int ver_orderings = 3;
    std::uint64_t ver_seed = 0;
    verify->add_option("input", ver_input, "building-set file or selector")->required();
    verify->add_option("--orderings", ver_orderings, "number of distinct random orderings")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", ver_seed, "seed (default 0)");
    verify->add_option("--format", ver_format, "text | structured")
        ->check(CLI::IsMember({"text", "structured"}));
    verify->add_option("--out", ver_out, "output path (default stdout)");

    // ffk
    auto* ffk = app.add_subcommand("ffk", "Frankl-Furedi-Kalai check for an f-vector");
    std::string ffk_vec;
    ffk->add_option("vector", ffk_vec, "e.g. \"(1, 22, 16)\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    if (bset->parsed()) {
        nesto::BuildingSet b = [&]() {
            if (auto sel = parse_selector(bset_input)) return named_building_set(*sel);
            return nesto::graphical_building_set(nesto::graph_from_text(slurp(bset_input)));
        }();
        emit(nesto::building_set_to_text(b), bset_out);
        return 0;
    }

    if (gamma->parsed()) {
        const nesto::BuildingSet b = load_building_set(gamma_input);
        nesto::CoeffVector g;
        if (gamma_method == "nested") {
            g = nesto::gamma_oracle(b);
        } else if (gamma_method == "volodin") {
            g = nesto::gamma_via_volodin(b);
        } else {
            if (!nesto::is_flag(b)) throw nesto::NotFlag("gamma complexes need a flag building set");
            if (gamma_ordering == "auto" && !b.connected()) {
                g = nesto::f_vector_cliques(nesto::gamma_complex_of(b, nesto::OrderingStrategy::lex()));
            } else {
                g = nesto::f_vector_cliques(
                    nesto::build_gamma_complex(resolve_ordering(b, gamma_ordering, gamma_seed)));
            }
        }
        std::cout << g.to_string() << "\n";
        return 0;
    }

    if (ordering->parsed()) {
        const nesto::BuildingSet b = load_building_set(ord_input);
        if (ord_mode == "find") {
            const nesto::OrderingStrategy strategy = ord_strategy == "random"
                                                         ? nesto::OrderingStrategy::random(ord_seed)
                                                         : nesto::OrderingStrategy::lex();
            emit(nesto::ordering_to_text(nesto::find_flag_ordering(b, strategy)), ord_out);
            return 0;
        }
        if (ord_file.empty()) throw nesto::ParseError("verify mode needs an ordering file");
        const nesto::FlagOrdering o = nesto::ordering_from_text(slurp(ord_file));
        if (!(o.building == b)) {
            std::cout << "invalid: ordering is for a different building set\n";
            return kExitError;
        }
        const nesto::OrderingCheck check = nesto::verify_flag_ordering(o);
        if (check.ok) {
            std::cout << "valid\n";
            return 0;
        }
        std::cout << "invalid at prefix " << check.prefix_index << ": " << check.message << "\n";
        return kExitError;
    }

    if (complexc->parsed()) {
        const nesto::BuildingSet b = load_building_set(cx_input);
        if (!nesto::is_flag(b)) throw nesto::NotFlag("gamma complexes need a flag building set");
        const nesto::FlagComplex g =
            nesto::build_gamma_complex(resolve_ordering(b, cx_ordering, cx_seed));
        emit(cx_dot ? nesto::complex_to_dot(g) : nesto::complex_to_text(g), cx_out);
        return 0;
    }

    if (np->parsed()) {
        const auto sel = parse_selector(np_sel);
        if (!sel) throw nesto::ParseError("np needs sn:N, s312:N or pn:N");
        nesto::FlagComplex g;
        if (sel->kind == "sn")
            g = nesto::gamma_complex_sn_hat(sel->n);
        else if (sel->kind == "s312")
            g = nesto::gamma_complex_s312(sel->n);
        else if (sel->kind == "pn")
            g = nesto::gamma_complex_pn(sel->n);
        else
            throw nesto::ParseError("np needs sn:N, s312:N or pn:N");
        emit(np_dot ? nesto::complex_to_dot(g) : nesto::complex_to_text(g), np_out);
        return 0;
    }

    if (compare->parsed()) {
        const nesto::FlagComplex a = nesto::complex_from_text(slurp(cmp_a));
        const nesto::FlagComplex b = nesto::complex_from_text(slurp(cmp_b));
        const auto witness = nesto::graphs_isomorphic(a, b);
        if (!witness) {
            std::cout << "NOT isomorphic\n";
            return 0;
        }
        std::cout << "isomorphic\n";
        for (int v = 0; v < a.vertex_count(); ++v)
            std::cout << a.label(v) << " -> " << b.label((*witness)[static_cast<std::size_t>(v)])
                      << "\n";
        return 0;
    }

    if (verify->parsed()) {
        const nesto::BuildingSet b = load_building_set(ver_input);
        const nesto::VerifyReport r = nesto::verify_triple(b, ver_orderings, ver_seed, ver_input);
        emit(ver_format == "structured" ? nesto::report_to_json(r) : nesto::report_to_text(r),
             ver_out);
        return r.agreement ? 0 : kExitError;
    }

    if (ffk->parsed()) {
        const bool ok = nesto::ffk_check(nesto::CoeffVector::parse(ffk_vec));
        std::cout << (ok ? "passes" : "fails") << "\n";
        return 0;
    }

    return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nesto::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const nesto::NotFlag& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const nesto::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitParse;
    }
}
