#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dani/asanuma.hpp"
#include "dani/expmap.hpp"
#include "dani/filtration.hpp"
#include "dani/parser.hpp"
#include "dani/ring.hpp"
#include "dani/stable_iso.hpp"
#include "dani/suite.hpp"

namespace {

using namespace dani;

RingConfig with_field(const RingConfig& cfg, const FieldSpec& field) {
    std::optional<std::string> g1, g2;
    if (cfg.g1) g1 = cfg.g1->str();
    if (cfg.g2) g2 = cfg.g2->str();
    return make_ring_config(field, cfg.family, cfg.r, cfg.defining.str(), g1, g2);
}

struct CommonOpts {
    std::string config_path;
    std::string field_text;
    std::string output = "text";

    RingConfig load() const {
        if (config_path.empty()) throw UsageError("--config is required");
        RingConfig cfg = load_ring_config(config_path);
        if (!field_text.empty()) cfg = with_field(cfg, FieldSpec::parse(field_text));
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_config = true) {
    if (with_config) cmd->add_option("--config", opts.config_path, "ring config file");
    cmd->add_option("--field", opts.field_text, "field override: Q or Fp:<p>");
    cmd->add_option("--output", opts.output, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

void emit(const CommonOpts& opts, const std::string& key, const std::string& value) {
    if (opts.output == "json") {
        nlohmann::json j;
        j[key] = value;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << value << "\n";
    }
}

std::map<std::string, std::string> image_map(const std::vector<std::string>& images) {
    std::map<std::string, std::string> out;
    for (const auto& text : images) {
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw UsageError("--image expects gen=polynomial, got '" + text + "'");
        out[text.substr(0, eq)] = text.substr(eq + 1);
    }
    return out;
}

ExpMap make_map(const RingSpecPtr& ring, const std::string& kind, int j,
                const std::string& gen, const std::vector<std::string>& images) {
    if (!kind.empty()) {
        if (kind == "translation") return mk_translation(ring, gen.empty() ? "w" : gen);
        if (kind == "vshift") return mk_v_shift(ring, gen);
        if (kind == "unitrow") return mk_unit_row(ring, j - 1).map;
        if (kind == "ml1") {
            Ml1Maps maps = mk_ml1_maps(ring);
            if (j < 1 || j > static_cast<int>(maps.maps.size()))
                throw UsageError("--j out of range");
            return maps.maps[static_cast<std::size_t>(j - 1)];
        }
        throw UsageError("unknown --kind " + kind);
    }
    if (images.empty()) throw UsageError("give either --kind or --image");
    return ExpMap::parse(ring, image_map(images));
}

void print_map(const ExpMap& phi) {
    for (const auto& gen : phi.ring()->generators()) {
        std::cout << gen << " -> " << phi.image(gen).str() << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact toolkit for Danielewski/Asanuma quotient rings, exponential maps "
                 "and stable-isomorphism certificates"};
    app.require_subcommand(1);

    // ring ------------------------------------------------------------------
    auto* ring_cmd = app.add_subcommand("ring", "normal forms, degrees, graded rings");
    ring_cmd->require_subcommand(1);
    CommonOpts ring_opts;
    std::string ring_expr, ring_weights;
    std::vector<std::string> ring_adjoin;

    auto* ring_norm = ring_cmd->add_subcommand("normalize", "normal form of an expression");
    add_common(ring_norm, ring_opts);
    ring_norm->add_option("--expr", ring_expr, "element expression")->required();
    ring_norm->add_option("--adjoin", ring_adjoin, "adjoin free generators");
    ring_norm->callback([&] {
        auto ring = RingSpec::make(ring_opts.load());
        if (!ring_adjoin.empty()) ring = ring->adjoin(ring_adjoin);
        emit(ring_opts, "normal_form", ring->parse_element(ring_expr).str());
    });

    auto* ring_deg = ring_cmd->add_subcommand("deg", "filtration degree of an element");
    add_common(ring_deg, ring_opts);
    ring_deg->add_option("--expr", ring_expr, "element expression")->required();
    ring_deg->add_option("--weights", ring_weights, "weights e1,...,em;vweight")->required();
    ring_deg->callback([&] {
        auto ring = RingSpec::make(ring_opts.load());
        Filtration f(ring, WeightVector::parse(ring_weights));
        auto d = f.degree(ring->parse_element(ring_expr));
        emit(ring_opts, "degree", d ? std::to_string(*d) : "-inf");
    });

    auto* ring_gr = ring_cmd->add_subcommand("gr", "associated graded ring");
    add_common(ring_gr, ring_opts);
    ring_gr->add_option("--weights", ring_weights, "weights e1,...,em;vweight")->required();
    ring_gr->callback([&] {
        auto ring = RingSpec::make(ring_opts.load());
        Filtration f(ring, WeightVector::parse(ring_weights));
        GradedRing gr = build_gr(f);
        emit(ring_opts, "gr_defining", gr.f_top.str());
    });

    // expmap ----------------------------------------------------------------
    auto* exp_cmd = app.add_subcommand("expmap", "exponential maps");
    exp_cmd->require_subcommand(1);
    CommonOpts exp_opts;
    std::string exp_kind, exp_gen, exp_expr, exp_weights;
    int exp_j = 1;
    std::vector<std::string> exp_images, exp_adjoin, exp_witnesses;

    auto add_map_opts = [&](CLI::App* cmd) {
        add_common(cmd, exp_opts);
        cmd->add_option("--kind", exp_kind, "translation, vshift, unitrow or ml1");
        cmd->add_option("--gen", exp_gen, "generator for translation / rest var for vshift");
        cmd->add_option("--j", exp_j, "index for unitrow/ml1 (1-based)");
        cmd->add_option("--image", exp_images, "generator image gen=poly (repeatable)");
        cmd->add_option("--adjoin", exp_adjoin, "adjoin free generators first");
    };
    auto load_ring = [&]() {
        auto ring = RingSpec::make(exp_opts.load());
        if (!exp_adjoin.empty()) ring = ring->adjoin(exp_adjoin);
        return ring;
    };

    auto* exp_check = exp_cmd->add_subcommand("check", "verify the exponential axioms");
    add_map_opts(exp_check);
    exp_check->callback([&] {
        auto ring = load_ring();
        ExpMap phi = make_map(ring, exp_kind, exp_j, exp_gen, exp_images);
        auto report = check_exponential(phi);
        if (report.ok()) {
            std::cout << "pass\n";
        } else {
            std::cout << report.str();
            throw Error("exponential axioms failed");
        }
    });

    auto* exp_make = exp_cmd->add_subcommand("make", "construct a named map");
    add_map_opts(exp_make);
    exp_make->callback([&] {
        auto ring = load_ring();
        if (exp_kind.empty()) throw UsageError("--kind is required for make");
        ExpMap phi = make_map(ring, exp_kind, exp_j, exp_gen, exp_images);
        print_map(phi);
        std::cout << "axioms: pass\n";
    });

    auto* exp_inv = exp_cmd->add_subcommand("invariant", "test phi(x) = x");
    add_map_opts(exp_inv);
    exp_inv->add_option("--expr", exp_expr, "element to test")->required();
    exp_inv->callback([&] {
        auto ring = load_ring();
        ExpMap phi = make_map(ring, exp_kind, exp_j, exp_gen, exp_images);
        check_exponential(phi);
        bool inv = is_invariant(phi, ring->parse_element(exp_expr));
        emit(exp_opts, "invariant", inv ? "true" : "false");
    });

    auto* exp_hom = exp_cmd->add_subcommand("homogenize", "induced map on gr");
    add_map_opts(exp_hom);
    exp_hom->add_option("--weights", exp_weights, "weights e1,...,em;vweight")->required();
    exp_hom->add_option("--witness", exp_witnesses, "invariant elements to carry to gr");
    exp_hom->callback([&] {
        auto ring = load_ring();
        ExpMap phi = make_map(ring, exp_kind, exp_j, exp_gen, exp_images);
        auto report = check_exponential(phi);
        if (!report.ok()) throw Error("input map fails the axioms:\n" + report.str());
        Filtration f(ring, WeightVector::parse(exp_weights));
        GradedRing gr = build_gr(f);
        std::vector<RingElement> witnesses;
        for (const auto& text : exp_witnesses) witnesses.push_back(ring->parse_element(text));
        auto hom = homogenize_expmap(phi, f, gr, witnesses);
        std::cout << "gr defining polynomial: " << gr.f_top.str() << "\n";
        std::cout << "indeterminate weight: " << -hom.theta_num;
        if (hom.theta_den != 1) std::cout << "/" << hom.theta_den;
        std::cout << "\n";
        print_map(hom.map);
        std::cout << "axioms: pass\n";
    });

    // stiso -----------------------------------------------------------------
    auto* stiso_cmd = app.add_subcommand("stiso", "stable isomorphism certificates");
    stiso_cmd->require_subcommand(1);
    CommonOpts stiso_opts;
    std::string stiso_target, stiso_out, stiso_cert;

    auto* stiso_build = stiso_cmd->add_subcommand("build", "build a verified certificate");
    add_common(stiso_build, stiso_opts);
    stiso_build->add_option("--target", stiso_target, "target exponents s1,s2,... "
                                                      "(default all ones)");
    stiso_build->add_option("--out", stiso_out, "certificate output file");
    stiso_build->callback([&] {
        RingConfig cfg = stiso_opts.load();
        BezoutPair pair = obtain_cofactors(cfg);
        std::vector<int> target(static_cast<std::size_t>(cfg.m), 1);
        if (!stiso_target.empty()) {
            target.clear();
            std::stringstream ss(stiso_target);
            std::string item;
            while (std::getline(ss, item, ',')) target.push_back(std::stoi(item));
        }
        ChainCertificate cert = chain_reduce(cfg, pair, target);
        std::string text = serialize_certificate(cert);
        if (!stiso_out.empty()) {
            std::ofstream out(stiso_out);
            if (!out) throw Error("cannot write " + stiso_out);
            out << text;
            std::cout << "certificate written to " << stiso_out << "\n";
        } else {
            std::cout << text;
        }
        std::cout << "VERIFIED (" << cert.links.size() << " links)\n";
    });

    auto* stiso_verify = stiso_cmd->add_subcommand("verify", "re-check a certificate file");
    stiso_verify->add_option("certificate", stiso_cert, "certificate file")->required();
    stiso_verify->callback([&] {
        std::ifstream in(stiso_cert);
        if (!in) throw UsageError("cannot open " + stiso_cert);
        std::stringstream buf;
        buf << in.rdbuf();
        ChainCertificate cert = parse_certificate(buf.str());
        auto verification = verify_certificate(cert);
        std::cout << verification.str();
        if (!verification.ok) throw Error("certificate verification failed");
        std::cout << "VERIFIED (" << cert.links.size() << " links, "
                  << verification.all().size() << " checks)\n";
    });

    // asanuma ---------------------------------------------------------------
    auto* asa_cmd = app.add_subcommand("asanuma", "generalized Asanuma rings");
    asa_cmd->require_subcommand(1);
    CommonOpts asa_opts;
    std::string z1t, t1t, zbt, tbt;

    auto* asa_classify = asa_cmd->add_subcommand("classify", "syntactic shape of H");
    add_common(asa_classify, asa_opts);
    asa_classify->add_option("--z1", z1t, "new coordinate Z1(Z,T)");
    asa_classify->add_option("--t1", t1t, "new coordinate T1(Z,T)");
    asa_classify->add_option("--zback", zbt, "old Z in the new coordinates");
    asa_classify->add_option("--tback", tbt, "old T in the new coordinates");
    asa_classify->callback([&] {
        auto ring = RingSpec::make(asa_opts.load());
        AsanumaShape shape;
        if (!z1t.empty() || !t1t.empty() || !zbt.empty() || !tbt.empty()) {
            if (z1t.empty() || t1t.empty() || zbt.empty() || tbt.empty())
                throw UsageError("a coordinate change needs --z1 --t1 --zback --tback");
            auto chg = CoordinateChange::parse(ring->field(), z1t, t1t, zbt, tbt);
            shape = h_shape_classify(ring, chg);
        } else {
            shape = h_shape_classify(ring);
        }
        std::cout << "classification: " << h_shape_name(shape.kind) << "\n";
        std::cout << "detail: " << shape.detail << "\n";
        if (shape.kind == HShapeKind::linear_in_T ||
            shape.kind == HShapeKind::monic_Z_separable) {
            std::cout << "a0 = " << shape.a0.str() << "\n";
            std::cout << "a1 = " << shape.a1.str() << "\n";
            std::cout << "Htilde = " << shape.htilde.str() << "\n";
        }
    });

    auto* asa_ml1 = asa_cmd->add_subcommand("ml1-maps", "row maps for linear-in-T shapes");
    add_common(asa_ml1, asa_opts);
    asa_ml1->callback([&] {
        auto ring = RingSpec::make(asa_opts.load());
        Ml1Maps maps = mk_ml1_maps(ring);
        for (std::size_t j = 0; j < maps.maps.size(); ++j) {
            std::cout << "map " << (j + 1) << ":\n";
            print_map(maps.maps[j]);
            std::cout << "claimed invariant generators:";
            for (const auto& g : maps.claimed_invariant_gens[j]) std::cout << " " << g;
            std::cout << "\naxioms: pass\n";
        }
    });

    auto* asa_ex2 = asa_cmd->add_subcommand("ex2", "two-variable unit-h fixture");
    asa_ex2->callback([&] {
        Ex2Report report = verify_ex2_suite();
        std::cout << report.str();
        if (!report.ok()) throw Error("ex2 fixture failed");
    });

    // suite -----------------------------------------------------------------
    auto* suite_cmd = app.add_subcommand("suite", "fixture suite");
    CommonOpts suite_opts;
    auto* suite_run_cmd = suite_cmd->add_subcommand("run", "run every fixture case");
    add_common(suite_run_cmd, suite_opts, false);
    bool suite_verbose = false;
    suite_run_cmd->add_flag("--verbose", suite_verbose, "print per-case transcripts");
    suite_run_cmd->callback([&] {
        SuiteReport report = suite_run();
        if (suite_opts.output == "json") {
            std::cout << report_emit_json(report);
        } else {
            std::cout << report_emit_text(report);
            if (suite_verbose) {
                for (const auto& c : report.cases) {
                    std::cout << "--- " << c.id << "\n" << c.transcript;
                }
            }
        }
        if (!report.all_passed()) throw Error("suite failures");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
