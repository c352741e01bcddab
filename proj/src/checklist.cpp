#include "strata/checklist.hpp"

#include <algorithm>
#include <sstream>

#include "strata/consistency.hpp"

namespace strata {

namespace {

// Per-layer witness vertex lists for one requirement, layer number -> list.
// A missing entry for a layer at or below the requirement's means the layer
// (and everything under it) is unsatisfiable.
using LayerWitnesses = std::map<int, std::vector<std::string>>;

void append_collapsed(std::vector<std::string>& out, const std::vector<std::string>& piece) {
    for (const std::string& v : piece) {
        if (out.empty() || out.back() != v) out.push_back(v);
    }
}

// Walks the evidence tree, concatenating each layer's path pieces in
// root-path order. A single-vertex piece above the physical layer descends
// through its lexicographically smallest image chain so lower layers keep a
// witness.
void collect_evidence(const LayeredModel& model, const RealizationTree& node,
                      LayerWitnesses& witnesses) {
    append_collapsed(witnesses[layer_number(node.root.layer)], node.root.vertices);
    if (node.root.vertices.size() == 1 && node.root.layer != Layer::Physical) {
        std::string cur = node.root.vertices.front();
        for (int n = layer_number(node.root.layer) - 1; n >= 1; --n) {
            const auto& images = model.images(cur);
            if (images.empty()) break;
            cur = images.front();  // sorted, smallest first
            append_collapsed(witnesses[n], {cur});
        }
        return;
    }
    for (const RealizationTree& child : node.children) {
        collect_evidence(model, child, witnesses);
    }
}

// Greedy top-down realization without backtracking, used when the requirement
// is not accessible: plain shortest/lex paths, first image pair with any
// path. Stops at the first layer where some link's images cannot be
// connected; layers below keep no witness. When the greedy walk reaches the
// physical layer it has built a complete realization, so reaching bottom is
// equivalent to accessibility.
LayerWitnesses greedy_witnesses(const LayeredModel& model, const Requirement& r) {
    LayerWitnesses witnesses;
    auto top = lexicographic_shortest_path(model, r.layer, r.src, r.dst, {});
    if (!top) return witnesses;
    std::vector<std::vector<std::string>> pieces{*top};
    append_collapsed(witnesses[layer_number(r.layer)], *top);

    for (int n = layer_number(r.layer) - 1; n >= 1; --n) {
        Layer below = *layer_from_number(n);
        std::vector<std::vector<std::string>> next;
        for (const std::vector<std::string>& piece : pieces) {
            if (piece.size() == 1) {
                const auto& images = model.images(piece.front());
                if (images.empty()) return witnesses;
                next.push_back({images.front()});
                continue;
            }
            for (std::size_t i = 0; i + 1 < piece.size(); ++i) {
                std::optional<std::vector<std::string>> best;
                for (const std::string& ia : model.images(piece[i])) {
                    for (const std::string& ib : model.images(piece[i + 1])) {
                        auto path = lexicographic_shortest_path(model, below, ia, ib, {});
                        if (path) {
                            best = std::move(path);
                            break;
                        }
                    }
                    if (best) break;
                }
                if (!best) return witnesses;
                next.push_back(std::move(*best));
            }
        }
        std::vector<std::string>& flat = witnesses[n];
        for (const auto& piece : next) append_collapsed(flat, piece);
        pieces = std::move(next);
    }
    return witnesses;
}

}  // namespace

std::vector<ChecklistItem> generate_checklist(const LayeredModel& model) {
    std::vector<ChecklistItem> items;
    for (const Component& c : model.components()) {
        ChecklistItem item;
        item.id = "CMP-" + std::to_string(layer_number(c.layer)) + "-" + c.id;
        item.kind = CheckKind::Component;
        item.layer = c.layer;
        item.subject = c.id;
        items.push_back(std::move(item));
    }

    for (const Requirement& r : model.requirements()) {
        AccessibilityResult access = check_accessibility(model, r);
        LayerWitnesses witnesses;
        if (access.pass) {
            collect_evidence(model, *access.evidence, witnesses);
        } else {
            witnesses = greedy_witnesses(model, r);
        }
        for (int n = layer_number(r.layer); n >= 1; --n) {
            ChecklistItem item;
            item.id = "INT-" + r.id + "-L" + std::to_string(n);
            item.kind = CheckKind::Interaction;
            item.layer = *layer_from_number(n);
            item.subject = r.id;
            auto it = witnesses.find(n);
            if (it != witnesses.end()) {
                item.status = CheckStatus::Covered;
                item.witness = it->second;
            } else {
                item.status = CheckStatus::Unsatisfiable;
            }
            items.push_back(std::move(item));
        }
    }

    std::sort(items.begin(), items.end(), [](const ChecklistItem& x, const ChecklistItem& y) {
        if (x.layer != y.layer) return layer_number(x.layer) > layer_number(y.layer);
        if (x.kind != y.kind) return x.kind == CheckKind::Component;
        return x.id < y.id;
    });
    return items;
}

CoverageSummary coverage_summary(const std::vector<ChecklistItem>& checklist) {
    CoverageSummary summary;
    for (const ChecklistItem& item : checklist) {
        auto& layer = summary.per_layer[item.layer];
        auto bump = [&item](CoverageSummary::LayerCounts& counts) {
            if (item.kind == CheckKind::Component) {
                ++counts.components;
            } else {
                ++counts.interactions;
            }
            if (item.status == CheckStatus::Unsatisfiable) ++counts.unsatisfiable;
        };
        bump(layer);
        bump(summary.totals);
    }
    return summary;
}

std::string render_checklist(const std::vector<ChecklistItem>& checklist, OutputFormat format) {
    std::ostringstream out;
    auto kind_name = [](CheckKind k) { return k == CheckKind::Component ? "component" : "interaction"; };
    auto status_name = [](CheckStatus s) {
        return s == CheckStatus::Covered ? "covered" : "unsatisfiable";
    };
    auto witness_text = [](const ChecklistItem& item) {
        if (item.witness.empty()) return std::string("-");
        std::string text;
        for (std::size_t i = 0; i < item.witness.size(); ++i) {
            if (i) text += ' ';
            text += item.witness[i];
        }
        return text;
    };

    if (format == OutputFormat::Lines) {
        for (const ChecklistItem& item : checklist) {
            out << item.id << "\t" << kind_name(item.kind) << "\t" << layer_number(item.layer)
                << "\t" << item.subject << "\t" << status_name(item.status) << "\t"
                << witness_text(item) << "\n";
        }
        return out.str();
    }

    std::size_t id_width = 2;
    std::size_t subject_width = 7;
    for (const ChecklistItem& item : checklist) {
        id_width = std::max(id_width, item.id.size());
        subject_width = std::max(subject_width, item.subject.size());
    }
    char header[256];
    std::snprintf(header, sizeof(header), "%-*s %-11s %5s %-*s %-13s %s\n",
                  static_cast<int>(id_width), "id", "kind", "layer",
                  static_cast<int>(subject_width), "subject", "status", "witness");
    out << header;
    for (const ChecklistItem& item : checklist) {
        char line[512];
        std::snprintf(line, sizeof(line), "%-*s %-11s %5d %-*s %-13s %s\n",
                      static_cast<int>(id_width), item.id.c_str(), kind_name(item.kind),
                      layer_number(item.layer), static_cast<int>(subject_width),
                      item.subject.c_str(), status_name(item.status), witness_text(item).c_str());
        out << line;
    }

    CoverageSummary summary = coverage_summary(checklist);
    for (Layer n : kLayersTopDown) {
        auto it = summary.per_layer.find(n);
        if (it == summary.per_layer.end()) continue;
        out << "layer " << layer_number(n) << ": " << it->second.components << " components, "
            << it->second.interactions << " interactions, " << it->second.unsatisfiable
            << " unsatisfiable\n";
    }
    out << "totals: " << summary.totals.components << " components, "
        << summary.totals.interactions << " interactions, " << summary.totals.unsatisfiable
        << " unsatisfiable\n";
    return out.str();
}

}  // namespace strata
