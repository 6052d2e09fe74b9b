#include "mptsc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mptsc/config.hpp"

namespace mptsc {

using nlohmann::json;

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string sig9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string title_case(Variant v) { return v == Variant::raw ? "Raw" : "Filtered"; }

struct Column {
    std::string header;
    const EvalReport* report;
};

void render_table(std::ostringstream& os, const std::string& title, const std::vector<Column>& columns) {
    std::vector<DistanceKind> rows;
    for (auto kind : all_distance_kinds) {
        for (const auto& c : columns) {
            if (c.report->find(kind) != nullptr) {
                rows.push_back(kind);
                break;
            }
        }
    }
    std::size_t first = 9;
    std::vector<std::size_t> widths;
    for (const auto& c : columns) widths.push_back(std::max<std::size_t>(c.header.size(), 6));

    os << title << '\n';
    std::string header = "Model";
    header.resize(first, ' ');
    for (std::size_t i = 0; i < columns.size(); ++i) {
        std::string cell = columns[i].header;
        header += " | " + std::string(widths[i] - cell.size(), ' ') + cell;
    }
    os << header << '\n' << std::string(header.size(), '-') << '\n';
    for (auto kind : rows) {
        std::string line(display_name(kind));
        line.resize(first, ' ');
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto* m = columns[i].report->find(kind);
            const std::string cell = m ? fixed2(m->accuracy_percent()) : "-";
            line += " | " + std::string(widths[i] - std::min(widths[i], cell.size()), ' ') + cell;
        }
        os << line << '\n';
    }
    os << '\n';
}

}  // namespace

std::string slug(std::string_view name) {
    std::string out;
    for (char c : name) {
        const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
        if (keep) {
            out += c;
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out.empty() ? "task" : out;
}

std::string format_tables(std::span<const EvalReport> reports) {
    std::ostringstream os;
    for (auto variant : {Variant::raw, Variant::filtered}) {
        std::vector<Column> columns;
        for (const auto& r : reports) {
            if (r.kind == TaskKind::up_down_wind && r.variant == variant) columns.push_back({r.task, &r});
        }
        if (!columns.empty()) render_table(os, "Up Wind versus Down Wind (" + title_case(variant) + ")", columns);
    }

    std::vector<std::string> hl_tasks;
    for (const auto& r : reports) {
        if (r.kind == TaskKind::high_low && std::find(hl_tasks.begin(), hl_tasks.end(), r.task) == hl_tasks.end()) {
            hl_tasks.push_back(r.task);
        }
    }
    if (!hl_tasks.empty()) {
        std::vector<Column> columns;
        for (const auto& task : hl_tasks) {
            for (auto variant : {Variant::raw, Variant::filtered}) {
                for (const auto& r : reports) {
                    if (r.kind != TaskKind::high_low || r.task != task || r.variant != variant) continue;
                    const auto header =
                        hl_tasks.size() == 1 ? title_case(variant) : task + " (" + title_case(variant) + ")";
                    columns.push_back({header, &r});
                }
            }
        }
        render_table(os, "High versus Low", columns);
    }
    return os.str();
}

std::string format_summary(const Summary& summary) {
    std::ostringstream os;
    os << "Average model accuracy across all tasks\n";
    for (const auto& row : summary.rows) {
        std::string name(display_name(row.kind));
        name.resize(10, ' ');
        os << "  " << name << fixed2(row.mean_accuracy) << "  (" << row.reports << " report"
           << (row.reports == 1 ? "" : "s") << ")\n";
    }
    for (const auto& w : summary.warnings) os << "  warning: " << w << '\n';
    return os.str();
}

bool matches_granularity(double percent, std::size_t total) {
    if (total == 0) return false;
    const double j = std::round(percent * static_cast<double>(total) / 100.0);
    for (double cand : {j - 1, j, j + 1}) {
        if (cand < 0 || cand > static_cast<double>(total)) continue;
        if (round2(100.0 * cand / static_cast<double>(total)) == percent) return true;
    }
    return false;
}

json report_to_json(std::span<const EvalReport> reports, const Summary& summary) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    json records = json::array();
    for (const auto& r : reports) {
        for (const auto& m : r.models) {
            json rec;
            rec["task"] = r.task;
            rec["task_kind"] = std::string(to_string(r.kind));
            rec["variant"] = std::string(to_string(r.variant));
            rec["model"] = std::string(to_string(m.kind));
            rec["accuracy"] = m.accuracy_percent();
            rec["correct"] = m.correct;
            rec["total"] = m.total;
            rec["accuracy_granularity_ok"] = matches_granularity(m.accuracy_percent(), m.total);
            rec["cv_accuracy"] = round2(100.0 * m.cv_accuracy);
            rec["tuned"] = to_json(m.tuned.distance);
            rec["tuned"]["k"] = m.tuned.k;
            rec["candidates_evaluated"] = m.candidates_evaluated;
            rec["candidates_skipped"] = m.candidates_skipped;
            rec["train_size"] = r.train_size;
            rec["test_size"] = r.test_size;
            rec["fold_sizes"] = r.fold_sizes;
            rec["leakage_check_passed"] = r.leakage_check_passed;
            rec["confusion"] = {{"classes", m.classes}, {"matrix", m.confusion}};
            rec["notes"] = m.notes;
            records.push_back(std::move(rec));
        }
    }
    doc["records"] = std::move(records);
    json rows = json::array();
    for (const auto& row : summary.rows) {
        rows.push_back({{"model", std::string(to_string(row.kind))},
                        {"mean_accuracy", round2(row.mean_accuracy)},
                        {"reports", row.reports}});
    }
    doc["summary"] = std::move(rows);
    doc["warnings"] = summary.warnings;
    return doc;
}

std::string format_prediction_log(const EvalReport& report) {
    std::ostringstream os;
    os << "# task=" << report.task << " variant=" << to_string(report.variant) << '\n';
    os << "# model\tquery\ttruth\tpredicted\tneighbors\n";
    for (const auto& m : report.models) {
        for (const auto& p : m.predictions) {
            os << to_string(m.kind) << '\t' << to_string(p.query) << '\t' << p.truth << '\t' << p.predicted << '\t';
            for (std::size_t i = 0; i < p.neighbors.size(); ++i) {
                if (i > 0) os << ',';
                os << to_string(p.neighbors[i].id) << ':' << sig9(p.neighbors[i].distance);
            }
            os << '\n';
        }
    }
    return os.str();
}

std::map<std::string, double> accuracies_from_log(std::string_view log) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // correct, total
    std::istringstream in{std::string(log)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, '\t')) fields.push_back(field);
        if (fields.size() < 4) throw ValidationError("malformed prediction log line: " + line);
        auto& [correct, total] = tally[fields[0]];
        if (fields[2] == fields[3]) ++correct;
        ++total;
    }
    std::map<std::string, double> out;
    for (const auto& [model, ct] : tally) {
        out[model] = round2(100.0 * static_cast<double>(ct.first) / static_cast<double>(ct.second));
    }
    return out;
}

}  // namespace mptsc
