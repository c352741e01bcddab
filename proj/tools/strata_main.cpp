// Command-line front end: validates, audits, and fault-injects four-layer
// system models. Exit codes: 0 clean, 1 findings present, 2 usage, parse, or
// model error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "strata/checklist.hpp"
#include "strata/consistency.hpp"
#include "strata/exports.hpp"
#include "strata/faultsim.hpp"
#include "strata/model.hpp"
#include "strata/textio.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;
constexpr int kExitError = 2;

strata::ParseResult load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw strata::Error(strata::Errc::UnknownElement, path, path + ": cannot read file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return strata::parse_model(buffer.str());
    } catch (const strata::ParseError& e) {
        throw strata::Error(e.code(), e.subject(), path + ":" + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw strata::Error(strata::Errc::UnknownElement, out_path,
                            out_path + ": cannot write file");
    }
    out << text;
}

strata::OutputFormat to_format(const std::string& name) {
    return name == "lines" ? strata::OutputFormat::Lines : strata::OutputFormat::Table;
}

// Accepts "comp:ID" or "link:LAYER:A-B" (layer by name or number). Link
// endpoints are resolved against the model so ids containing dashes still
// parse when unambiguous.
void parse_removal(const strata::LayeredModel& model, const std::string& expr,
                   strata::FaultScenario& scenario) {
    using strata::Errc;
    if (expr.rfind("comp:", 0) == 0) {
        std::string id = expr.substr(5);
        if (!model.find_component(id)) {
            throw strata::Error(Errc::UnknownElement, id, "unknown component \"" + id + "\"");
        }
        scenario.components.insert(id);
        return;
    }
    if (expr.rfind("link:", 0) == 0) {
        std::string rest = expr.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) {
            throw strata::Error(Errc::UnknownElement, expr,
                                "expected link:LAYER:A-B, got \"" + expr + "\"");
        }
        std::string layer_text = rest.substr(0, colon);
        std::string pair = rest.substr(colon + 1);
        auto layer = strata::parse_layer_name(layer_text);
        if (!layer && layer_text.size() == 1 && layer_text[0] >= '1' && layer_text[0] <= '4') {
            layer = strata::layer_from_number(layer_text[0] - '0');
        }
        if (!layer) {
            throw strata::Error(Errc::UnknownElement, layer_text,
                                "unknown layer \"" + layer_text + "\"");
        }
        for (std::size_t i = pair.find('-'); i != std::string::npos; i = pair.find('-', i + 1)) {
            strata::LinkKey key =
                strata::LinkKey::make(*layer, pair.substr(0, i), pair.substr(i + 1));
            if (model.has_link(key)) {
                scenario.links.insert(key);
                return;
            }
        }
        throw strata::Error(Errc::UnknownElement, expr, "unknown link \"" + expr + "\"");
    }
    throw strata::Error(Errc::UnknownElement, expr,
                        "expected comp:ID or link:LAYER:A-B, got \"" + expr + "\"");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-layer distributed system model analyzer"};
    app.require_subcommand(1);

    std::string model_path;
    std::string out_path;
    std::string format = "table";
    bool strict = false;
    std::string requirement_id;
    std::string export_format;
    std::vector<std::string> removals;

    auto add_model_arg = [&](CLI::App* cmd) {
        cmd->add_option("model", model_path, "model file")->required();
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "lines"}));
    };

    CLI::App* validate = app.add_subcommand("validate", "check structural rules");
    add_model_arg(validate);
    validate->add_flag("--strict", strict, "treat empty layers and link sets as violations");

    CLI::App* check = app.add_subcommand("check", "full consistency audit");
    add_model_arg(check);
    add_format(check);

    CLI::App* checklist = app.add_subcommand("checklist", "generate the test checklist");
    add_model_arg(checklist);
    checklist->add_option("-o", out_path, "write output to file");
    add_format(checklist);

    CLI::App* stats = app.add_subcommand("stats", "per-layer cardinality table");
    add_model_arg(stats);

    CLI::App* inject = app.add_subcommand("inject", "remove elements and propagate failures");
    add_model_arg(inject);
    inject->add_option("--remove", removals, "comp:ID or link:LAYER:A-B")
        ->required()
        ->take_all();
    add_format(inject);

    CLI::App* fmea = app.add_subcommand("fmea", "single-fault effect analysis");
    add_model_arg(fmea);
    fmea->add_option("-o", out_path, "write output to file");
    add_format(fmea);

    CLI::App* spof = app.add_subcommand("spof", "single points of failure of a requirement");
    add_model_arg(spof);
    spof->add_option("--requirement", requirement_id, "requirement id")->required();
    add_format(spof);

    CLI::App* exporter = app.add_subcommand("export", "write the model in another format");
    add_model_arg(exporter);
    exporter->add_option("--format", export_format, "facts | drawing | canonical")
        ->required()
        ->check(CLI::IsMember({"facts", "drawing", "canonical"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitClean : kExitError;
    }

    try {
        strata::ParseResult loaded = load_model(model_path);
        const strata::LayeredModel& model = loaded.model;
        for (const strata::ParseWarning& w : loaded.warnings) {
            std::cerr << model_path << ":" << w.line << ":" << w.col << ": warning: " << w.message
                      << "\n";
        }

        if (*validate) {
            strata::ValidationReport report = strata::validate_structure(model, strict);
            std::cout << strata::render_validation_report(report);
            return report.ok() ? kExitClean : kExitFindings;
        }
        if (*check) {
            strata::ConsistencyReport report = strata::consistency_check(model);
            std::cout << strata::render_consistency_report(report, to_format(format));
            return report.verdict == strata::Verdict::Inconsistent ? kExitFindings : kExitClean;
        }
        if (*checklist) {
            auto items = strata::generate_checklist(model);
            emit(strata::render_checklist(items, to_format(format)), out_path);
            auto summary = strata::coverage_summary(items);
            return summary.totals.unsatisfiable == 0 ? kExitClean : kExitFindings;
        }
        if (*stats) {
            std::cout << strata::render_cardinality_table(strata::cardinality_report(model));
            return kExitClean;
        }
        if (*inject) {
            strata::FaultScenario scenario;
            for (const std::string& expr : removals) parse_removal(model, expr, scenario);
            strata::ImpactReport impact = strata::propagate_failures(model, scenario);
            std::cout << strata::render_impact(model, scenario, impact, to_format(format));
            return impact.broken_requirements.empty() ? kExitClean : kExitFindings;
        }
        if (*fmea) {
            auto rows = strata::generate_fmea(model);
            emit(strata::render_fmea(rows, to_format(format)), out_path);
            for (const strata::FmeaRow& row : rows) {
                if (!row.effects.empty()) return kExitFindings;
            }
            return kExitClean;
        }
        if (*spof) {
            const strata::Requirement* r = model.find_requirement(requirement_id);
            if (!r) {
                throw strata::Error(strata::Errc::UnknownElement, requirement_id,
                                    "unknown requirement \"" + requirement_id + "\"");
            }
            auto spofs = strata::enumerate_spofs(model, *r);
            std::cout << strata::render_spofs(requirement_id, spofs, to_format(format));
            return spofs.empty() ? kExitClean : kExitFindings;
        }
        if (*exporter) {
            std::string text;
            if (export_format == "facts") {
                text = strata::export_logic_facts(model);
            } else if (export_format == "drawing") {
                text = strata::export_drawing(model);
            } else {
                text = strata::serialize_model(model);
            }
            std::cout << text;
            return kExitClean;
        }
    } catch (const strata::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
