#pragma once

// Command-line front end. run() parses argv, executes one subcommand and
// writes a JSON document; exit status 0 ok, 1 domain error, 2 parse error.

#include "holant/evaluators.hpp"
#include "holant/holographic.hpp"
#include "holant/json_io.hpp"
#include "holant/random.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace holant::cli {

using io::json;

enum Exit { kOk = 0, kDomain = 1, kParse = 2, kInternal = 3 };

struct Options {
    std::string input, output, mode = "auto", matrix, side = "column", library, library_out;
    bool hadamard = false, check = false;
    int workers = detail::default_workers();
    int random = 0, max_edges = 8;
    std::uint64_t seed = 1;
};

namespace detail {

inline bool all_of(const Registry& r, bool (*pred)(const Signature&)) {
    for (const auto& s : r.sigs)
        if (!pred(s)) return false;
    return true;
}

// Realizations for every registry entry, or nullopt if one is missing.
inline std::optional<std::vector<std::optional<MatchgateFragment>>> realizations(const SignatureGrid& g) {
    std::vector<std::optional<MatchgateFragment>> out;
    for (const auto& s : g.registry.sigs) {
        out.push_back(realize(s));
        if (!out.back()) return std::nullopt;
    }
    return out;
}

// Matchgate evaluation, directly or after an H2 transformation of a
// bipartite grid. nullopt when neither applies.
inline std::optional<Scalar> try_fkt(const SignatureGrid& g, std::string& how) {
    if (!g.dangling.empty() || !is_planar(g)) return std::nullopt;
    if (auto r = realizations(g)) {
        how = "fkt";
        return evaluate_matchgate_grid(g, *r);
    }
    if (!g.is_bipartite_labeled()) return std::nullopt;
    SignatureGrid hat = transform_grid(g, Transform2x2::hadamard());
    if (auto r = realizations(hat)) {
        how = "fkt-hadamard";
        return evaluate_matchgate_grid(hat, *r);
    }
    return std::nullopt;
}

inline json value_json(const Scalar& v, const std::string& mode) { return json{{"value", io::to_json(v)}, {"text", v.to_string()}, {"mode", mode}}; }

inline json eval_csp(const CspInstance& inst, const Options& o, std::ostream& log) {
    std::string mode = o.mode;
    if (mode == "auto") {
        if (all_of(inst.registry, is_product))
            mode = "product";
        else if (all_of(inst.registry, is_affine))
            mode = "affine";
        else if (inst.vars <= kBruteForceMaxVars)
            mode = "brute";
        else
            mode = "fkt";
        if (mode != "product" && mode != "affine" && all_of(inst.registry, is_matchgate_hat)) {
            std::string how;
            auto grid = csp_to_grid(inst);
            if (auto v = try_fkt(grid, how)) {
                log << "eval: mode " << how << "\n";
                return value_json(*v, how);
            }
        }
        log << "eval: mode " << mode << "\n";
    }
    if (mode == "product") return value_json(eval_product_csp(inst), mode);
    if (mode == "affine") return value_json(eval_affine_csp(inst), mode);
    if (mode == "brute") return value_json(brute_force_csp(inst), mode);
    if (mode == "fkt") {
        std::string how;
        if (auto v = try_fkt(csp_to_grid(inst), how)) return value_json(*v, how);
        throw DomainError("eval: no planar matchgate realization for this instance");
    }
    throw ParseError("--mode", "unknown mode " + mode);
}

inline json eval_grid(const SignatureGrid& g, const Options& o, std::ostream& log) {
    if (o.mode == "product" || o.mode == "affine") throw DomainError("eval: mode " + o.mode + " needs a #CSP instance");
    if (o.mode == "fkt" || o.mode == "auto") {
        std::string how;
        if (auto v = try_fkt(g, how)) {
            if (o.mode == "auto") log << "eval: mode " << how << "\n";
            return value_json(*v, how);
        }
        if (o.mode == "fkt") throw DomainError("eval: no planar matchgate realization for this grid");
        log << "eval: mode brute\n";
    }
    if (o.mode == "brute" || o.mode == "auto") {
        if (!g.dangling.empty()) return json{{"signature", io::to_json(gate_signature(g, o.workers))}, {"mode", "brute"}};
        return value_json(brute_force_holant(g, o.workers), "brute");
    }
    throw ParseError("--mode", "unknown mode " + o.mode);
}

inline Signature sig_field(const json& j, const char* key) { return io::parse_signature(io::detail::at(j, key, ""), std::string(".") + key); }
inline int int_field(const json& j, const char* key) { return io::detail::as_int(io::detail::at(j, key, ""), std::string(".") + key); }

// {"op": name, ...operands}; a grid with dangling edges gives its gate signature.
inline json gadget(const json& j, const Options& o, const std::string& base_dir) {
    if (j.contains("vertices")) return json{{"signature", io::to_json(gate_signature(io::parse_grid(j, base_dir), o.workers))}};
    const std::string& op = io::detail::as_string(io::detail::at(j, "op", ""), ".op");
    Signature out;
    if (op == "tensor") {
        Signature f = sig_field(j, "f"), g = sig_field(j, "g");
        if (j.contains("owner")) {
            auto owner = io::detail::as_int_list(j["owner"], ".owner");
            out = tensor(f, g, owner);
        } else {
            out = tensor(f, g);
        }
    } else if (op == "tensor_power") {
        out = tensor_power(sig_field(j, "f"), int_field(j, "k"));
    } else if (op == "pin") {
        out = pin(sig_field(j, "f"), int_field(j, "var"), int_field(j, "value"));
    } else if (op == "derivative") {
        Signature f = sig_field(j, "f"), g = sig_field(j, "g");
        out = j.contains("position") ? derivative(f, g, int_field(j, "position")) : derivative(f, g);
    } else if (op == "derivative_power") {
        out = derivative_power(sig_field(j, "f"), sig_field(j, "g"), int_field(j, "k"));
    } else if (op == "rotate") {
        out = rotate(sig_field(j, "f"));
    } else if (op == "flip") {
        out = flip_var(sig_field(j, "f"), int_field(j, "var"));
    } else if (op == "link") {
        out = link(sig_field(j, "f"), sig_field(j, "g"));
    } else if (op == "contract") {
        std::vector<std::pair<int, int>> pairs;
        const json& ps = io::detail::at(j, "pairs", "");
        if (!ps.is_array()) throw ParseError(".pairs", "expected an array of [i, j] pairs");
        for (std::size_t k = 0; k < ps.size(); ++k) {
            auto p = io::detail::as_int_list(ps[k], ".pairs[" + std::to_string(k) + "]");
            if (p.size() != 2) throw ParseError(".pairs[" + std::to_string(k) + "]", "expected [i, j]");
            pairs.emplace_back(p[0], p[1]);
        }
        out = contract(sig_field(j, "f"), sig_field(j, "g"), pairs);
    } else if (op == "matrix") {
        std::string order = j.contains("order") ? io::detail::as_string(j["order"], ".order") : "reversed";
        if (order != "reversed" && order != "natural") throw ParseError(".order", "expected \"reversed\" or \"natural\"");
        auto m = signature_matrix(sig_field(j, "f"), int_field(j, "split"), order == "natural" ? ColumnOrder::Natural : ColumnOrder::Reversed);
        json rows = json::array();
        for (int r = 0; r < m.rows; ++r) {
            json row = json::array();
            for (int c = 0; c < m.cols; ++c) row.push_back(io::to_json(m(r, c)));
            rows.push_back(std::move(row));
        }
        return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
    } else if (op == "crossover") {
        out = crossover();
    } else {
        throw ParseError(".op", "unknown gadget operation \"" + op + "\"");
    }
    return json{{"signature", io::to_json(out)}};
}

inline Transform2x2 chosen_transform(const Options& o) {
    if (o.hadamard && !o.matrix.empty()) throw ParseError("--matrix", "give either --matrix or --hadamard");
    if (!o.matrix.empty()) {
        json m;
        try {
            m = json::parse(o.matrix);
        } catch (const json::parse_error& e) {
            throw ParseError("--matrix", std::string("malformed JSON: ") + e.what());
        }
        return io::parse_transform(m, "--matrix");
    }
    return Transform2x2::hadamard();
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact signature calculus and counting for planar Boolean #CSP and Holant problems"};
    app.require_subcommand(1);
    Options o;
    app.add_option("-o,--output", o.output, "write the result here instead of standard output");
    app.add_option("--seed", o.seed, "seed for randomized generation");
    app.add_option("--workers", o.workers, "worker threads for brute force")->check(CLI::Range(1, 64));

    auto* classify = app.add_subcommand("classify", "Pl-#CSP(F): PTime, PlanarPTimeOnly or SharpPHard");
    auto* classify_csp_cmd = app.add_subcommand("classify-csp", "#CSP(F): PTime or SharpPHard");
    auto* classify_csp2 = app.add_subcommand("classify-csp2", "Pl-#CSP^2(F) for symmetric F");
    for (auto* c : {classify, classify_csp_cmd, classify_csp2}) c->add_option("input", o.input, "signature set JSON")->required();

    auto* eval = app.add_subcommand("eval", "evaluate a #CSP instance or a signature grid");
    eval->add_option("input", o.input, "grid or #CSP JSON")->required();
    eval->add_option("--mode", o.mode, "auto|brute|affine|product|fkt")->check(CLI::IsMember({"auto", "brute", "affine", "product", "fkt"}));

    auto* transform_cmd = app.add_subcommand("transform", "apply T^{-1} (column) or T^T (row) to a signature set");
    transform_cmd->add_option("input", o.input, "signature set JSON")->required();
    transform_cmd->add_option("--matrix", o.matrix, "[[a,b],[c,d]] as JSON");
    transform_cmd->add_flag("--hadamard", o.hadamard, "T = H2 (the default)");
    transform_cmd->add_option("--side", o.side, "column|row")->check(CLI::IsMember({"column", "row"}));

    auto* gadget_cmd = app.add_subcommand("gadget", "signature of a gadget expression or of a grid with dangling edges");
    gadget_cmd->add_option("input", o.input, "gadget JSON")->required();

    auto* fkt_cmd = app.add_subcommand("fkt", "perfect matchings of a planar graph, or the signature of a fragment");
    fkt_cmd->add_option("input", o.input, "planar graph or fragment JSON");
    fkt_cmd->add_flag("--check", o.check, "also count by enumeration");
    fkt_cmd->add_option("--library", o.library, "validate a realization library file");
    fkt_cmd->add_option("--library-out", o.library_out, "write the builtin realization library");

    auto* inv = app.add_subcommand("check-invariance", "Holant of a bipartite grid before and after a holographic transformation");
    inv->add_option("input", o.input, "bipartite grid JSON");
    inv->add_option("--matrix", o.matrix, "[[a,b],[c,d]] as JSON (default H2)");
    inv->add_option("--random", o.random, "check this many random grids and transformations instead");
    inv->add_option("--max-edges", o.max_edges, "edge bound for random grids")->check(CLI::Range(1, kBruteForceMaxEdges));

    auto emit_error = [&](const char* kind, const std::string& msg, const std::string& path) {
        json e{{"error", kind}, {"message", msg}};
        if (!path.empty()) e["path"] = path;
        out << e.dump(2) << "\n";
    };
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        emit_error("parse", e.what(), "");
        return kParse;
    }

    try {
        json result;
        std::string base = io::directory_of(o.input);
        if (*classify || *classify_csp_cmd || *classify_csp2) {
            auto F = io::parse_signature_set(io::read_file(o.input));
            auto v = *classify ? classify_pl_csp(F) : *classify_csp_cmd ? classify_csp(F) : classify_pl_csp2_symmetric(F);
            result = io::to_json(v);
        } else if (*eval) {
            json doc = io::read_file(o.input);
            result = doc.contains("constraints") ? detail::eval_csp(io::parse_csp(doc, base), o, err)
                                                 : detail::eval_grid(io::parse_grid(doc, base), o, err);
        } else if (*transform_cmd) {
            auto F = io::parse_signature_set(io::read_file(o.input));
            Transform2x2 t = detail::chosen_transform(o);
            std::vector<Signature> G;
            for (const auto& f : F) G.push_back(transform(f, t, o.side == "row" ? Side::Row : Side::Column));
            result = io::to_json(G);
        } else if (*gadget_cmd) {
            result = detail::gadget(io::read_file(o.input), o, base);
        } else if (*fkt_cmd) {
            if (!o.library_out.empty()) {
                std::ofstream f(o.library_out);
                if (!f) throw DomainError("cannot write " + o.library_out);
                f << io::library_to_json(builtin_library()).dump(2) << "\n";
                result["library_written"] = o.library_out;
                result["entries"] = builtin_library().size();
            }
            if (!o.library.empty()) {
                auto lib = io::parse_library(io::read_file(o.library));
                result["library_valid"] = true;
                result["entries"] = lib.size();
            }
            if (!o.input.empty()) {
                json doc = io::read_file(o.input);
                if (doc.contains("dangling")) {
                    auto frag = io::parse_fragment(doc);
                    Signature s = fragment_signature(frag);
                    result["signature"] = io::to_json(s);
                    result["matchgate"] = is_matchgate(s);
                } else {
                    PlanarGraph g = io::parse_planar_graph(doc);
                    Scalar v = count_pm_fkt(g);
                    result["value"] = io::to_json(v);
                    result["text"] = v.to_string();
                    if (o.check) {
                        Scalar e = enumerate_pm(g);
                        result["enumerated"] = io::to_json(e);
                        result["agree"] = e == v;
                    }
                }
            }
            if (result.is_null()) throw ParseError("fkt", "give an input file, --library or --library-out");
        } else if (*inv) {
            if (o.random > 0) {
                random::Rng rng(o.seed);
                int agree = 0;
                json cases = json::array();
                for (int k = 0; k < o.random; ++k) {
                    auto g = random::bipartite_planar_grid(rng, o.max_edges);
                    auto t = random::invertible_gaussian_transform(rng);
                    auto r = check_holant_invariance(g, t);
                    agree += r.equal;
                    cases.push_back({{"edges", g.num_edges}, {"transform", io::to_json(t)}, {"lhs", io::to_json(r.lhs)}, {"rhs", io::to_json(r.rhs)}, {"equal", r.equal}});
                }
                result = json{{"seed", o.seed}, {"checked", o.random}, {"equal", agree}, {"cases", cases}};
            } else {
                if (o.input.empty()) throw ParseError("check-invariance", "give an input grid or --random");
                auto g = io::parse_grid(io::read_file(o.input), base);
                auto r = check_holant_invariance(g, detail::chosen_transform(o));
                result = json{{"lhs", io::to_json(r.lhs)}, {"rhs", io::to_json(r.rhs)}, {"equal", r.equal}};
            }
        }
        if (o.output.empty()) {
            out << result.dump(2) << "\n";
        } else {
            std::ofstream f(o.output);
            if (!f) throw DomainError("cannot write " + o.output);
            f << result.dump(2) << "\n";
        }
        return kOk;
    } catch (const ParseError& e) {
        emit_error("parse", e.what(), e.path());
        return kParse;
    } catch (const DomainError& e) {
        emit_error("domain", e.what(), "");
        return kDomain;
    } catch (const std::exception& e) {
        emit_error("internal", e.what(), "");
        return kInternal;
    }
}

} // namespace holant::cli
