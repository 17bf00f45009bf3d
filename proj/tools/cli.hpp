#pragma once

// nsbox command line: reproduction pipeline and file I/O over the library.
// Exit status: 0 success, 1 domain or I/O error, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nsbox/nsbox.hpp"

namespace nsbox::cli {

using json = nlohmann::json;

enum class Format { Table, Json };

inline std::string digits_string(const Digits& d) {
    std::string s;
    for (auto x : d) s += std::to_string(x);
    return s;
}

inline void print_box_state(std::ostream& os, const BoxState& s) {
    const auto& sig = s.signature();
    std::size_t width = 4;
    for (const auto& q : s.table()) width = std::max(width, to_string(q).size() + 1);
    os << "signature:";
    for (const auto& b : sig.boxes()) os << " [" << b.inputs << "," << b.outputs << "]";
    os << "\n" << std::setw(8) << "I \\ O";
    for (std::size_t o = 0; o < sig.joint_outputs(); ++o) {
        os << std::setw(static_cast<int>(width)) << digits_string(sig.decode_outputs(o));
    }
    os << "\n";
    for (std::size_t i = 0; i < sig.joint_inputs(); ++i) {
        os << std::setw(8) << digits_string(sig.decode_inputs(i));
        for (std::size_t o = 0; o < sig.joint_outputs(); ++o) {
            os << std::setw(static_cast<int>(width)) << to_string(s.at(i, o));
        }
        os << "\n";
    }
}

inline std::string vector_string(const Vector& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + to_string(v[k]);
    return s + ")";
}

inline unsigned parse_bit_string_char(char c) {
    if (c != '0' && c != '1') throw CLI::ValidationError("expected a string of 0/1 digits");
    return unsigned(c - '0');
}

inline std::optional<LocalExtremalId> local_id_from_label(const std::string& s) {
    if (s.size() != 4) return std::nullopt;
    return LocalExtremalId{parse_bit_string_char(s[0]), parse_bit_string_char(s[1]),
                           parse_bit_string_char(s[2]), parse_bit_string_char(s[3])};
}

inline std::optional<NonlocalExtremalId> nonlocal_id_from_label(const std::string& s) {
    if (s.size() != 3) return std::nullopt;
    return NonlocalExtremalId{parse_bit_string_char(s[0]), parse_bit_string_char(s[1]),
                              parse_bit_string_char(s[2])};
}

inline json decomposition_json(const LocalDecomposition& d) {
    json out = json::object();
    for (const auto& [id, w] : d) out[id.label()] = to_string(w);
    return out;
}

inline std::string decomposition_string(const LocalDecomposition& d) {
    std::string s;
    for (const auto& [id, w] : d) s += (s.empty() ? "" : " + ") + to_string(w) + "*" + id.label();
    return s;
}

/// The coupler-polytope vertices in canonical order, with their couplers.
struct CouplerVertices {
    HRep hrep;
    VRep vrep;
    std::vector<Coupler> couplers;
};

inline const CouplerVertices& coupler_vertices() {
    static const CouplerVertices cv = [] {
        CouplerVertices out{build_coupler_polytope(), {}, {}};
        out.vrep = enumerate_vertices(out.hrep);
        for (const auto& v : out.vrep.vertices) out.couplers.push_back(Coupler::from_zero_row(v));
        return out;
    }();
    return cv;
}

/// A vertex index into coupler_vertices(), or a family label such as X000.
inline Coupler resolve_coupler(const std::string& id) {
    const auto& cv = coupler_vertices();
    if (!id.empty() && std::all_of(id.begin(), id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        const auto k = std::stoul(id);
        if (k >= cv.couplers.size()) {
            throw CLI::ValidationError("--coupler", "vertex index " + id + " out of range (0-" +
                                                        std::to_string(cv.couplers.size() - 1) + ")");
        }
        return cv.couplers[k];
    }
    for (const auto& f : family_couplers()) {
        if (f.label() == id) return f.coupler;
    }
    throw CLI::ValidationError("--coupler", "unknown coupler \"" + id + "\" (use a vertex index or a label like X000)");
}

struct SwapVerdict {
    unsigned b_out;
    Rational probability;
    BoxState alice_charlie;
    std::optional<LocalDecomposition> local;
};

/// Embeds the coupler on Bob's boxes of PR ⊗ PR and conditions on each b'.
inline std::vector<SwapVerdict> coupler_swap(const Coupler& c) {
    const auto after = apply_embedded(c, pr_pair_state(), 1, 2);  // boxes: A, b', C
    std::vector<SwapVerdict> out;
    for (unsigned b = 0; b < c.output_cardinality(); ++b) {
        try {
            auto cond = condition(after, 1, 0, b);
            auto local = local_membership(cond.collapsed);
            out.push_back({b, cond.probability, std::move(cond.collapsed), std::move(local)});
        } catch (const ZeroProbabilityOutcome&) {
        }
    }
    return out;
}

struct ReproCheck {
    std::string name;
    std::string value;
    bool pass;
};

inline std::vector<ReproCheck> repro_checks() {
    std::vector<ReproCheck> checks;
    const auto ns = enumerate_vertices(two_box_no_signalling_hrep());
    checks.push_back({"no-signalling polytope vertices", std::to_string(ns.vertices.size()), ns.vertices.size() == 24});
    checks.push_back({"no-signalling polytope dimension", std::to_string(ns.dimension), ns.dimension == 8});
    checks.push_back({"CHSH of PR state", to_string(chsh_value(pr_state())), chsh_value(pr_state()) == 4});

    const auto& cv = coupler_vertices();
    checks.push_back({"coupler polytope inequalities", std::to_string(cv.hrep.inequalities.size()),
                      cv.hrep.inequalities.size() == 48});
    checks.push_back({"coupler polytope vertices", std::to_string(cv.vrep.vertices.size()),
                      cv.vrep.vertices.size() == 82});
    checks.push_back({"coupler polytope dimension", std::to_string(cv.vrep.dimension), cv.vrep.dimension == 9});
    checks.push_back({"coupler polytope linearities", std::to_string(cv.vrep.linearities.size()),
                      cv.vrep.linearities.size() == 7});

    const auto tr = classify_triviality(cv.vrep);
    std::string hist;
    for (const auto& [k, n] : tr.histogram) hist += (hist.empty() ? "" : ", ") + class_name(k) + "=" + std::to_string(n);
    const std::map<CouplerClass, std::size_t> expected{{CouplerClass::Deterministic, 2},
                                                       {CouplerClass::OneSided, 8},
                                                       {CouplerClass::XorGated, 8},
                                                       {CouplerClass::AndGated, 32},
                                                       {CouplerClass::Sequential, 32}};
    checks.push_back({"class histogram", hist, tr.histogram == expected});
    checks.push_back({"vertex actions == wiring actions", tr.vertex_actions_equal_wiring_actions ? "yes" : "no",
                      tr.vertex_actions_equal_wiring_actions});
    checks.push_back({"non-trivial couplers", std::to_string(tr.nontrivial_count), tr.nontrivial_count == 0});

    const auto naive = analyze_naive_coupler();
    checks.push_back({"naive coupler LP feasible", naive.local_rule_chi_feasible ? "yes" : "no",
                      !naive.local_rule_chi_feasible});
    checks.push_back({"naive coupler (lower bound, forced)",
                      to_string(naive.lower_bound) + ", " + to_string(naive.forced_value),
                      naive.lower_bound == Rational(1, 4) && naive.forced_value == 0});
    checks.push_back({"naive coupler PR action", vector_string(naive.affine_solution),
                      naive.affine_solution == Vector{Rational(3, 2), Rational(-1, 2)}});

    std::size_t wiring_branches = 0, wiring_local = 0;
    for (const auto& w : all_wirings()) {
        for (const auto& [bb, br] : swapping_by_wiring(w)) {
            ++wiring_branches;
            if (br.alice_charlie == predicted_swap_state(w, bb.first, bb.second) &&
                local_membership(br.alice_charlie)) {
                ++wiring_local;
            }
        }
    }
    checks.push_back({"wiring swap branches local", std::to_string(wiring_local) + "/" + std::to_string(wiring_branches),
                      wiring_local == wiring_branches && wiring_branches == 1024});

    std::size_t coupler_branches = 0, coupler_local = 0;
    for (const auto& c : cv.couplers) {
        for (const auto& v : coupler_swap(c)) {
            ++coupler_branches;
            if (v.local) ++coupler_local;
        }
    }
    checks.push_back({"coupler swap branches local",
                      std::to_string(coupler_local) + "/" + std::to_string(coupler_branches),
                      coupler_local == coupler_branches && coupler_branches > 0});
    return checks;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact no-signalling boxes, wirings and couplers"};
    app.name("nsbox");
    app.require_subcommand(1);
    std::string format_name = "table";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
    app.fallthrough();

    // catalog
    auto* catalog = app.add_subcommand("catalog", "Emit an extremal or noisy two-box state");
    std::string local_label, nonlocal_label, output_path;
    bool noisy = false, list_all = false;
    auto* opt_local = catalog->add_option("--local", local_label, "Local state L_abcd, e.g. 1010");
    auto* opt_nonlocal = catalog->add_option("--nonlocal", nonlocal_label, "PR-type state N_abc, e.g. 000");
    auto* opt_noisy = catalog->add_flag("--noisy", noisy, "Half PR state, half local noise");
    auto* opt_list = catalog->add_flag("--list", list_all, "List all 24 extremal states");
    opt_local->excludes(opt_nonlocal)->excludes(opt_noisy)->excludes(opt_list);
    opt_nonlocal->excludes(opt_noisy)->excludes(opt_list);
    opt_noisy->excludes(opt_list);
    catalog->add_option("-o,--output", output_path, "Write the state to this file");

    // chsh
    auto* chsh = app.add_subcommand("chsh", "Exact CHSH value of a two-box state");
    std::string state_path;
    std::string variant_label;
    chsh->add_option("file", state_path, "Box-state file")->required();
    chsh->add_option("--variant", variant_label, "CHSH variant abc (default 000)");

    auto* verify = app.add_subcommand("verify-ns", "Check the no-signalling conditions");
    verify->add_option("file", state_path, "Box-state file")->required();

    auto* membership = app.add_subcommand("membership", "Decide membership in the local polytope");
    membership->add_option("file", state_path, "Box-state file")->required();

    auto* wirings = app.add_subcommand("wirings", "Distinct actions of Bob's deterministic wirings");
    bool wirings_list = false;
    wirings->add_flag("--list", wirings_list, "List the distinct wiring couplers");

    auto* swap_demo = app.add_subcommand("swap-demo", "Alice-Charlie states after Bob's wiring on PR x PR");
    unsigned lambda = 0, mu = 0, nu = 0;
    swap_demo->add_option("--lambda", lambda, "First input y1")->check(CLI::Range(0, 1));
    swap_demo->add_option("--mu", mu, "y2 = mu*b1 xor nu")->check(CLI::Range(0, 1));
    swap_demo->add_option("--nu", nu, "y2 = mu*b1 xor nu")->check(CLI::Range(0, 1));

    auto* couplers = app.add_subcommand("couplers", "Coupler polytope tools");
    couplers->require_subcommand(1);
    auto* c_enum = couplers->add_subcommand("enumerate", "V-representation of the coupler polytope");
    auto* c_classify = couplers->add_subcommand("classify", "Match polytope vertices to wirings");
    auto* c_naive = couplers->add_subcommand("naive", "Impossibility report for the naive coupler");
    auto* c_swap = couplers->add_subcommand("swap", "Alice-Charlie states after a coupler on PR x PR");
    std::string coupler_id;
    c_swap->add_option("--coupler", coupler_id, "Vertex index or family label (e.g. X000)")->required();

    auto* polytope = app.add_subcommand("polytope", "H-rep to V-rep conversion");
    polytope->require_subcommand(1);
    auto* p_vertices = polytope->add_subcommand("vertices", "Enumerate vertices of an H-rep file");
    std::string hrep_path;
    p_vertices->add_option("file", hrep_path, "H-rep file")->required();
    auto* p_builtin = polytope->add_subcommand("hrep", "Emit a built-in H-rep");
    std::string builtin;
    p_builtin->add_option("which", builtin, "no-signalling | coupler")
        ->required()
        ->check(CLI::IsMember({"no-signalling", "coupler"}));

    auto* repro = app.add_subcommand("repro", "Run the full reproduction pipeline");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }
    const Format format = format_name == "json" ? Format::Json : Format::Table;

    try {
        if (catalog->parsed()) {
            if (list_all) {
                json arr = json::array();
                const auto& ext = extremal_states();
                for (std::size_t k = 0; k < ext.size(); ++k) {
                    if (format == Format::Json) {
                        arr.push_back({{"label", extremal_label(k)}, {"state", io::to_json(ext[k])}});
                    } else {
                        out << extremal_label(k) << "  CHSH " << to_string(chsh_value(ext[k])) << "\n";
                    }
                }
                if (format == Format::Json) out << arr.dump(2) << "\n";
                return 0;
            }
            std::optional<BoxState> s;
            if (!local_label.empty()) {
                auto id = local_id_from_label(local_label);
                if (!id) throw CLI::ValidationError("--local", "expects four bits, e.g. 1010");
                s = local_extremal(*id);
            } else if (!nonlocal_label.empty()) {
                auto id = nonlocal_id_from_label(nonlocal_label);
                if (!id) throw CLI::ValidationError("--nonlocal", "expects three bits, e.g. 000");
                s = nonlocal_extremal(*id);
            } else if (noisy) {
                s = noisy_pr_state();
            } else {
                throw CLI::ValidationError("catalog", "choose one of --local, --nonlocal, --noisy, --list");
            }
            if (!output_path.empty()) {
                std::ofstream f(output_path);
                if (!f) throw std::runtime_error(output_path + ": cannot open for writing");
                f << io::to_json(*s).dump(2) << "\n";
                if (!f) throw std::runtime_error(output_path + ": write failed");
            }
            if (format == Format::Json || output_path.empty()) {
                if (format == Format::Json) {
                    out << io::to_json(*s).dump(2) << "\n";
                } else {
                    print_box_state(out, *s);
                }
            }
            return 0;
        }

        if (chsh->parsed()) {
            const auto s = io::read_box_state(state_path);
            ChshVariant v;
            if (!variant_label.empty()) {
                auto id = nonlocal_id_from_label(variant_label);
                if (!id) throw CLI::ValidationError("--variant", "expects three bits, e.g. 000");
                v = {id->alpha, id->beta, id->gamma};
            }
            const auto value = chsh_variant_value(s, v);
            if (format == Format::Json) {
                out << json{{"chsh", to_string(value)}}.dump() << "\n";
            } else {
                out << to_string(value) << "\n";
            }
            return 0;
        }

        if (verify->parsed()) {
            const auto s = io::read_box_state(state_path);
            const auto report = check_no_signalling(s);
            if (format == Format::Json) {
                json viol = json::array();
                for (const auto& v : report.violations) {
                    viol.push_back({{"senders", v.senders},
                                    {"receivers", v.receivers},
                                    {"receiver_inputs", v.receiver_inputs},
                                    {"receiver_outputs", v.receiver_outputs},
                                    {"sender_inputs", {v.sender_inputs_first, v.sender_inputs_second}},
                                    {"values", {to_string(v.value_first), to_string(v.value_second)}}});
                }
                out << json{{"ok", report.ok}, {"violations", viol}}.dump(2) << "\n";
            } else if (report.ok) {
                out << "no-signalling: ok\n";
            } else {
                out << "no-signalling: VIOLATED (" << report.violations.size() << " violations)\n";
                for (const auto& v : report.violations) out << "  " << describe(v) << "\n";
            }
            return report.ok ? 0 : 1;
        }

        if (membership->parsed()) {
            const auto s = io::read_box_state(state_path);
            const auto ns = check_no_signalling(s);
            if (!ns.ok) throw SignallingState(state_path + ": state is signalling: " + describe(ns.violations.front()));
            const auto d = local_membership(s);
            if (format == Format::Json) {
                json j{{"local", d.has_value()}};
                if (d) j["decomposition"] = decomposition_json(*d);
                out << j.dump(2) << "\n";
            } else if (d) {
                out << "local: " << decomposition_string(*d) << "\n";
            } else {
                out << "not local\n";
            }
            return 0;
        }

        if (wirings->parsed()) {
            const auto ws = enumerate_wiring_couplers();
            json arr = json::array();
            for (std::size_t k = 0; k < ws.size(); ++k) {
                const auto fam = match_family(ws[k].action);
                const std::string label = fam ? fam->label() : "?";
                if (format == Format::Json) {
                    arr.push_back({{"label", label},
                                   {"class", fam ? class_name(fam->cls) : "?"},
                                   {"wiring_index", ws[k].representative.index()},
                                   {"wiring", ws[k].representative.describe()}});
                } else if (wirings_list) {
                    out << std::setw(3) << k << "  " << std::setw(7) << std::left << label << std::right << "  "
                        << ws[k].representative.describe() << "\n";
                }
            }
            if (format == Format::Json) {
                out << json{{"count", ws.size()}, {"wirings", arr}}.dump(2) << "\n";
            } else {
                out << ws.size() << " distinct wiring couplers from " << Wiring::kCount << " deterministic wirings\n";
            }
            return 0;
        }

        if (swap_demo->parsed()) {
            Wiring w;
            w.first_input = lambda;
            w.mu = mu;
            w.nu = nu;
            w.output_table = {0, 1, 1, 0};
            json arr = json::array();
            for (const auto& [bb, br] : swapping_by_wiring(w)) {
                const auto predicted = predicted_swap_state(w, bb.first, bb.second);
                const auto [y1, y2] = w.inputs(bb.first, bb.second);
                const LocalExtremalId pid{y1, bb.first, y2, bb.second};
                const bool match = predicted == br.alice_charlie;
                const bool local = local_membership(br.alice_charlie).has_value();
                if (format == Format::Json) {
                    arr.push_back({{"b1", bb.first},
                                   {"b2", bb.second},
                                   {"probability", to_string(br.probability)},
                                   {"state", io::to_json(br.alice_charlie)},
                                   {"predicted", pid.label()},
                                   {"matches_prediction", match},
                                   {"local", local}});
                } else {
                    out << "b1=" << bb.first << " b2=" << bb.second << "  probability " << to_string(br.probability)
                        << "  state = " << pid.label() << (match ? "" : " (MISMATCH)")
                        << (local ? "  local" : "  NON-LOCAL") << "\n";
                    print_box_state(out, br.alice_charlie);
                }
            }
            if (format == Format::Json) out << arr.dump(2) << "\n";
            return 0;
        }

        if (couplers->parsed()) {
            if (c_enum->parsed()) {
                const auto& cv = coupler_vertices();
                json summary{{"inequalities", cv.hrep.inequalities.size()},
                             {"vertices", cv.vrep.vertices.size()},
                             {"dimension", cv.vrep.dimension},
                             {"linearities", cv.vrep.linearities.size()}};
                if (format == Format::Json) {
                    out << json{{"summary", summary}, {"vrep", io::to_json(cv.vrep)}}.dump(2) << "\n";
                } else {
                    out << "inequalities: " << cv.hrep.inequalities.size() << "\nvertices: " << cv.vrep.vertices.size()
                        << "\ndimension: " << cv.vrep.dimension << "\nlinearities: " << cv.vrep.linearities.size()
                        << "\n";
                    for (std::size_t k = 0; k < cv.vrep.vertices.size(); ++k) {
                        out << std::setw(3) << k << "  " << vector_string(cv.vrep.vertices[k]) << "\n";
                    }
                }
                return 0;
            }
            if (c_classify->parsed()) {
                const auto& cv = coupler_vertices();
                const auto tr = classify_triviality(cv.vrep);
                if (format == Format::Json) {
                    json hist = json::object();
                    for (const auto& [k, n] : tr.histogram) hist[class_name(k)] = n;
                    json verts = json::array();
                    for (const auto& v : tr.vertices) {
                        verts.push_back({{"label", v.family ? v.family->label() : "?"},
                                         {"wiring", v.wiring ? v.wiring->describe() : ""},
                                         {"trivial", v.wiring.has_value()}});
                    }
                    out << json{{"histogram", hist},
                                {"nontrivial", tr.nontrivial_count},
                                {"vertex_actions_equal_wiring_actions", tr.vertex_actions_equal_wiring_actions},
                                {"vertices", verts}}
                               .dump(2)
                        << "\n";
                } else {
                    for (const auto& [k, n] : tr.histogram) out << std::setw(14) << class_name(k) << ": " << n << "\n";
                    out << "non-trivial couplers: " << tr.nontrivial_count << "\n";
                    out << "vertex actions == wiring actions: "
                        << (tr.vertex_actions_equal_wiring_actions ? "yes" : "no") << "\n";
                    for (std::size_t k = 0; k < tr.vertices.size(); ++k) {
                        const auto& v = tr.vertices[k];
                        out << std::setw(3) << k << "  " << std::setw(7) << std::left
                            << (v.family ? v.family->label() : "?") << std::right << "  "
                            << (v.wiring ? v.wiring->describe() : "NON-TRIVIAL") << "\n";
                    }
                }
                return 0;
            }
            if (c_naive->parsed()) {
                const auto r = analyze_naive_coupler();
                if (format == Format::Json) {
                    out << json{{"local_rule_chi_feasible", r.local_rule_chi_feasible},
                                {"contradiction",
                                 {{"lower_bound", to_string(r.lower_bound)},
                                  {"forced_value", to_string(r.forced_value)}}},
                                {"affine_solution", io::to_json(r.affine_solution)},
                                {"affine_solution_unique", r.affine_solution_unique}}
                               .dump(2)
                        << "\n";
                } else {
                    out << "chi reproducing b' = ag^b^d on local states, valid on PR states: "
                        << (r.local_rule_chi_feasible ? "exists" : "none (LP infeasible)") << "\n"
                        << "noisy PR state, P'(1) from the PR + noise decomposition >= " << to_string(r.lower_bound)
                        << "\n"
                        << "noisy PR state, P'(1) from the local decomposition   = " << to_string(r.forced_value)
                        << "\n"
                        << "PR state action without positivity: P'(0) = " << to_string(r.affine_solution[0])
                        << ", P'(1) = " << to_string(r.affine_solution[1])
                        << (r.affine_solution_unique ? " (unique)" : " (not unique)") << "\n";
                }
                return 0;
            }
            if (c_swap->parsed()) {
                const auto c = resolve_coupler(coupler_id);
                json arr = json::array();
                for (const auto& v : coupler_swap(c)) {
                    if (format == Format::Json) {
                        json j{{"b_out", v.b_out},
                               {"probability", to_string(v.probability)},
                               {"state", io::to_json(v.alice_charlie)},
                               {"chsh", to_string(chsh_value(v.alice_charlie))},
                               {"local", v.local.has_value()}};
                        if (v.local) j["decomposition"] = decomposition_json(*v.local);
                        arr.push_back(std::move(j));
                    } else {
                        out << "b'=" << v.b_out << "  probability " << to_string(v.probability) << "  CHSH "
                            << to_string(chsh_value(v.alice_charlie)) << "  "
                            << (v.local ? "local: " + decomposition_string(*v.local) : "NON-LOCAL") << "\n";
                        print_box_state(out, v.alice_charlie);
                    }
                }
                if (format == Format::Json) out << arr.dump(2) << "\n";
                return 0;
            }
        }

        if (polytope->parsed()) {
            if (p_vertices->parsed()) {
                HRep h;
                try {
                    h = io::hrep_from_json(io::read_json_file(hrep_path));
                } catch (const nlohmann::json::exception& e) {
                    throw ParseError(hrep_path + ": " + e.what());
                } catch (const ParseError& e) {
                    throw ParseError(hrep_path + ": " + e.what());
                }
                const auto v = enumerate_vertices(h);
                if (format == Format::Json) {
                    out << io::to_json(v).dump(2) << "\n";
                } else {
                    out << "vertices: " << v.vertices.size() << "\ndimension: " << v.dimension
                        << "\nlinearities: " << v.linearities.size() << "\nrays: " << v.rays.size() << "\n";
                    for (const auto& x : v.vertices) out << "  " << vector_string(x) << "\n";
                }
                return 0;
            }
            if (p_builtin->parsed()) {
                const auto h = builtin == "coupler" ? build_coupler_polytope() : two_box_no_signalling_hrep();
                out << io::to_json(h).dump(2) << "\n";
                return 0;
            }
        }

        if (repro->parsed()) {
            const auto checks = repro_checks();
            bool all = true;
            json arr = json::array();
            for (const auto& c : checks) {
                all = all && c.pass;
                if (format == Format::Json) {
                    arr.push_back({{"check", c.name}, {"value", c.value}, {"pass", c.pass}});
                } else {
                    out << (c.pass ? "[PASS] " : "[FAIL] ") << std::setw(38) << std::left << c.name << std::right
                        << c.value << "\n";
                }
            }
            if (format == Format::Json) {
                out << json{{"pass", all}, {"checks", arr}}.dump(2) << "\n";
            } else {
                out << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
            }
            return all ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace nsbox::cli
