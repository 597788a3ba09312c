#include "hopfalgd/cli.hpp"
#include "hopfalgd/io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace hopfalgd;

namespace {

constexpr int kInputError = 2;

std::uint64_t seed_from_env()
{
    const char* s = std::getenv("HOPFALGD_SEED");
    if (!s || !*s) return 1;
    const std::string v(s);
    if (v.find_first_not_of("0123456789") != std::string::npos || v.size() > 19)
        throw InputError("HOPFALGD_SEED", 0, "expected a non-negative integer, got '" + v + "'");
    return std::stoull(v);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certify the Hopf algebroid of functions on a finite groupoid and its Galois correspondence"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string file, json_out, field = "q";
    long exhaustive = 0;
    long limit = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", file, "groupoid JSON file")->required();
        sub->add_option("--json", json_out, "also write the report as JSON to this path");
    };
    CLI::App* validate = app.add_subcommand("validate", "groupoid validation and Hopf algebroid axioms");
    add_common(validate);
    CLI::App* normal = app.add_subcommand("normal", "list normal subgroupoids and their Hopf ideals");
    add_common(normal);
    normal->add_option("--limit", limit, "cap on orbit unions examined");
    CLI::App* corr = app.add_subcommand("correspondence", "normal Hopf ideals, coinvariants and the Galois connection");
    add_common(corr);
    corr->add_option("--field", field, "q or fp:<prime>");
    corr->add_option("--exhaustive-subspaces", exhaustive, "over F_p, enumerate every subspace when dim H is at most N");
    corr->add_option("--limit", limit, "cap on enumeration work; exceeded scans are reported as SKIPPED");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        CommandOptions opt;
        opt.prime = parse_field(field);
        if (exhaustive < 0) throw InputError("--exhaustive-subspaces", 0, "must be non-negative");
        opt.exhaustive_subspaces = exhaustive;
        if (limit >= 0) opt.limit = static_cast<std::size_t>(limit);
        opt.seed = seed_from_env();

        ReportDocument doc;
        if (validate->parsed()) doc = cmd_validate(file, opt);
        else if (normal->parsed()) doc = cmd_normal(file, opt);
        else doc = cmd_correspondence(file, opt);

        std::cout << render_text(doc);
        if (!json_out.empty()) {
            std::ofstream out(json_out, std::ios::binary);
            if (!out) throw InputError("--json", 0, "cannot write '" + json_out + "'");
            out << render_json(doc).dump(2) << '\n';
        }
        return doc.exit_code();
    }
    catch (const InputError& e) {
        std::cerr << "hopfalgd: input error: " << e.what() << '\n';
        return kInputError;
    }
}
