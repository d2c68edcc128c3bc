// Command line front end. Exit codes: 0 ok, 2 config parse error,
// 3 unsupported case, 4 inconclusive invertibility, 5 verify disagreement,
// 1 anything else.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bispec/acceptance.hpp"
#include "bispec/config.hpp"
#include "bispec/spectra.hpp"

namespace {

std::uint64_t env_seed() {
    const char* s = std::getenv("SPECTRA_SEED");
    if (!s || !*s) return 0;
    return std::strtoull(s, nullptr, 10);
}

// temp-then-rename so a crash never leaves a partial file behind
void write_atomic(const std::string& path, const std::string& bytes) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw bispec::error("cannot open " + tmp + " for writing");
        out.write(bytes.data(), std::streamsize(bytes.size()));
        if (!out) throw bispec::error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw bispec::error("cannot rename " + tmp + " to " + path);
}

const char* class_name(bispec::MapClass c) {
    switch (c) {
        case bispec::MapClass::EllipticRational: return "elliptic-rational";
        case bispec::MapClass::EllipticIrrational: return "elliptic-irrational";
        case bispec::MapClass::Parabolic: return "parabolic";
        default: return "hyperbolic";
    }
}

const char* invertibility_name(bispec::InvertibilityStatus s) {
    switch (s) {
        case bispec::InvertibilityStatus::InvertibleA2: return "invertible-a2";
        case bispec::InvertibilityStatus::InvertibleCT2Only: return "invertible-ct2-only";
        case bispec::InvertibilityStatus::NotInvertibleCT2: return "not-invertible-ct2";
        default: return "inconclusive";
    }
}

int cmd_classify(const std::string& path) {
    bispec::RunConfig cfg = bispec::load_config(path);
    bispec::CaseTag tag = bispec::classify_input(cfg.map, cfg.weight);
    std::cout << "case: " << bispec::case_tag_text(tag) << "\n";
    std::cout << "factor1: " << class_name(tag.class1) << "\n";
    std::cout << "factor2: " << class_name(tag.class2) << "\n";
    if (tag.relation) {
        const bispec::Relation& rel = *tag.relation;
        if (rel.kind == bispec::RelationKind::Independent)
            std::cout << "relation: independent\n";
        else
            std::cout << "relation: "
                      << (rel.kind == bispec::RelationKind::Positive ? "positive"
                                                                     : "mixed")
                      << " p=" << rel.p << " q=" << rel.q << "\n";
    }
    std::cout << "invertibility: " << invertibility_name(tag.invertibility) << "\n";
    std::cout << "monomial-hypothesis: " << (tag.monomial_hypothesis ? "holds" : "not-needed")
              << "\n";
    std::cout << "coordinates-swapped: " << (tag.coordinates_swapped ? "yes" : "no")
              << "\n";
    if (tag.crossed) std::cout << "swap-form: yes\n";
    return 0;
}

int cmd_spectrum(const std::string& path, const std::string& svg_flag) {
    bispec::RunConfig cfg = bispec::load_config(path);
    cfg.oracle.seed = env_seed();
    bispec::ReportOptions opts;
    opts.oracle = cfg.oracle;
    bispec::SpectrumReport rep = bispec::compute_report(cfg.map, cfg.weight, opts);
    std::string json = bispec::to_json(rep).dump(2);
    json.push_back('\n');
    std::cout << json;
    if (!cfg.json_path.empty()) write_atomic(cfg.json_path, json);
    std::string svg_path = svg_flag.empty() ? cfg.svg_path : svg_flag;
    if (!svg_path.empty()) write_atomic(svg_path, bispec::to_svg(rep, 320));
    return 0;
}

int cmd_verify(const std::string& path) {
    bispec::RunConfig cfg = bispec::load_config(path);
    cfg.oracle.seed = env_seed();
    bispec::ReportOptions opts;
    opts.oracle = cfg.oracle;
    bispec::SpectrumReport rep = bispec::compute_report(cfg.map, cfg.weight, opts);
    std::printf("%-44s %12s %26s  %s\n", "quantity", "closed-form", "oracle-bounds",
                "agree");
    bool all_agree = true;
    for (const bispec::OracleRecordEntry& e : rep.oracle_record) {
        char cf[32];
        if (e.closed_form)
            std::snprintf(cf, sizeof cf, "%.6g", *e.closed_form);
        else
            std::snprintf(cf, sizeof cf, "-");
        char bounds[64];
        std::snprintf(bounds, sizeof bounds, "[%.6g, %.6g]", e.lower, e.upper);
        std::printf("%-44s %12s %26s  %s\n", e.quantity.c_str(), cf, bounds,
                    e.agree ? "yes" : "NO");
        all_agree = all_agree && e.agree;
    }
    for (const std::string& n : rep.notes) std::printf("note: %s\n", n.c_str());
    std::printf("%s\n", all_agree ? "verify: all checks agree"
                                  : "verify: DISAGREEMENT between closed form and oracle");
    return all_agree ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified spectra of weighted composition operators on the bidisc"};
    app.require_subcommand(1);

    std::string classify_path, spectrum_path, verify_path, svg_path;
    CLI::App* classify = app.add_subcommand("classify", "print the case tag and hypothesis flags");
    classify->add_option("config", classify_path, "JSON config file")->required();
    CLI::App* spectrum = app.add_subcommand("spectrum", "compute all four spectra as JSON");
    spectrum->add_option("config", spectrum_path, "JSON config file")->required();
    spectrum->add_option("--svg", svg_path, "also render the four regions to this SVG file");
    CLI::App* verify = app.add_subcommand("verify", "cross-check closed forms against the oracle");
    verify->add_option("config", verify_path, "JSON config file")->required();
    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (classify->parsed()) return cmd_classify(classify_path);
        if (spectrum->parsed()) return cmd_spectrum(spectrum_path, svg_path);
        if (verify->parsed()) return cmd_verify(verify_path);
        if (selftest->parsed())
            return bispec::print_acceptance(std::cout, env_seed()) == 0 ? 0 : 1;
    } catch (const bispec::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const bispec::unsupported_case& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const bispec::inconclusive_invertibility& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
