#include "sentcause/report.hpp"

#include <map>

#include "sentcause/errors.hpp"
#include "sentcause/format.hpp"

namespace sentcause {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_number(double x) {
    if (!std::isfinite(x)) return format_number(x);
    return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Granger

ordered_json granger_json(const ExperimentReport& report) {
    ordered_json root;
    root["market"] = report.market;
    root["lags"] = report.lags;
    ordered_json cells = ordered_json::array();
    for (const auto& [key, cell] : report.cells) {
        ordered_json c;
        c["transform"] = transform_key(key.transform);
        c["indicator"] = indicator_key(key.indicator);
        c["lag"] = key.lag;
        c["direction"] = direction_key(key.direction);
        if (cell.result) {
            const auto& r = *cell.result;
            c["cause"] = r.cause;
            c["effect"] = r.effect;
            c["t_eff"] = r.t_eff;
            c["df_num"] = r.df_num;
            c["df_den"] = r.df_den;
            c["f_stat"] = r.f_stat ? json_number(*r.f_stat) : ordered_json(nullptr);
            c["perfect_fit"] = r.perfect_fit();
            c["p_value"] = json_number(r.p_value);
            c["p_value_display"] = format_p_value(r.p_value);
            c["significant_5pct"] = r.significant_5pct;
            c["rss_restricted"] = json_number(r.rss_restricted);
            c["rss_unrestricted"] = json_number(r.rss_unrestricted);
        } else {
            c["error"] = cell.error;
        }
        cells.push_back(std::move(c));
    }
    root["cells"] = std::move(cells);

    ordered_json aic = ordered_json::array();
    for (const auto& [key, choice] : report.aic_lag) {
        ordered_json a;
        a["transform"] = transform_key(key.transform);
        a["indicator"] = indicator_key(key.indicator);
        a["frame_rows"] = report.frame_rows.at(key);
        if (choice.selection) {
            a["selected_lag"] = choice.selection->p;
            a["t_eff"] = choice.selection->t_eff;
            ordered_json values = ordered_json::array();
            for (double v : choice.selection->aic) values.push_back(json_number(v));
            a["aic"] = std::move(values);
        } else {
            a["error"] = choice.error;
        }
        aic.push_back(std::move(a));
    }
    root["aic_lag_selection"] = std::move(aic);
    return root;
}

std::string granger_csv(const ExperimentReport& report) {
    std::string out = csv_row({"market", "transform", "indicator", "lag", "direction", "cause", "effect", "t_eff",
                               "df_num", "df_den", "f_stat", "perfect_fit", "p_value", "p_value_display",
                               "significant_5pct", "error"});
    for (const auto& [key, cell] : report.cells) {
        std::vector<std::string> row{report.market, transform_key(key.transform), indicator_key(key.indicator),
                                     std::to_string(key.lag), direction_key(key.direction)};
        if (cell.result) {
            const auto& r = *cell.result;
            row.insert(row.end(), {r.cause, r.effect, std::to_string(r.t_eff), std::to_string(r.df_num),
                                   std::to_string(r.df_den), r.f_stat ? format_number(*r.f_stat) : "",
                                   r.perfect_fit() ? "true" : "false", format_number(r.p_value),
                                   format_p_value(r.p_value), r.significant_5pct ? "true" : "false", ""});
        } else {
            row.insert(row.end(), {"", "", "", "", "", "", "", "", "", "", cell.error});
        }
        out += csv_row(row);
    }
    return out;
}

std::string granger_markdown(const ExperimentReport& report) {
    std::string out = "# Granger causality: " + report.market + "\n";
    for (Transform t : kAllTransforms) {
        out += "\n## " + std::string(transform_title(t)) + ": " + report.market + "\n\n|  |";
        for (std::size_t lag : report.lags) {
            out += " Lag" + std::to_string(lag) + " Test1 | Lag" + std::to_string(lag) + " Test2 |";
        }
        out += "\n|---|";
        for (std::size_t i = 0; i < report.lags.size(); ++i) out += "---|---|";
        out += '\n';
        for (Indicator ind : kAllIndicators) {
            out += "| " + sentiment_label(t, ind) + " |";
            for (std::size_t lag : report.lags) {
                for (Direction d : kAllDirections) {
                    const auto& cell = report.cells.at(CellKey{t, ind, lag, d});
                    if (!cell.result) {
                        out += " n/a |";
                    } else {
                        out += " " + format_p_value(cell.result->p_value) + (cell.result->significant_5pct ? "*" : "") +
                               " |";
                    }
                }
            }
            out += '\n';
        }
        out += "\nTest1: " + returns_label(t) + " causes " + sentiment_label(t, Indicator::Sent) + "/" +
               sentiment_label(t, Indicator::Arms) + ". Test2: the reverse direction. Cells hold F-test p-values; "
               "* marks p < 0.05.\n";
        for (Indicator ind : kAllIndicators) {
            for (std::size_t lag : report.lags) {
                for (Direction d : kAllDirections) {
                    const auto& cell = report.cells.at(CellKey{t, ind, lag, d});
                    if (!cell.result) {
                        out += "\n- n/a " + std::string(indicator_key(ind)) + " lag " + std::to_string(lag) + " " +
                               direction_key(d) + ": " + cell.error + "\n";
                    }
                }
            }
        }
        const auto& sent_aic = report.aic_lag.at(FamilyKey{t, Indicator::Sent});
        const auto& arms_aic = report.aic_lag.at(FamilyKey{t, Indicator::Arms});
        auto describe = [](const LagChoice& c) {
            return c.selection ? std::to_string(c.selection->p) : std::string("n/a");
        };
        out += "\nAIC-selected VAR lag: " + sentiment_label(t, Indicator::Sent) + " " + describe(sent_aic) + ", " +
               sentiment_label(t, Indicator::Arms) + " " + describe(arms_aic) + ".\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// VAR tables

std::string render_coefficient_cell(const CoefficientTable::Cell& cell) {
    return format_fixed4(cell.coef) + " (" + format_fixed4(cell.tstat) + ")" + (cell.significant_5pct ? "*" : "");
}

std::string render_var_table_markdown(const CoefficientTable& table) {
    std::string out = "|  |";
    for (const auto& eq : table.equations) out += " " + eq + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < table.equations.size(); ++i) out += "---|";
    out += '\n';
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out += "| " + table.row_labels[r] + " |";
        for (const auto& cell : table.cells[r]) out += " " + render_coefficient_cell(cell) + " |";
        out += '\n';
    }
    return out;
}

std::string var_tables_csv(const ExperimentReport& report) {
    std::string out = csv_row({"market", "transform", "indicator", "lag", "row", "equation", "coef", "se", "tstat",
                               "significant_5pct", "t_eff", "max_root_modulus", "error"});
    for (const auto& [key, entry] : report.var_tables) {
        const std::vector<std::string> prefix{report.market, transform_key(key.transform),
                                              indicator_key(key.indicator), std::to_string(key.lag)};
        if (!entry.table) {
            auto row = prefix;
            row.insert(row.end(), {"", "", "", "", "", "", "", "", entry.error});
            out += csv_row(row);
            continue;
        }
        const auto& t = *entry.table;
        for (std::size_t r = 0; r < t.row_labels.size(); ++r) {
            for (std::size_t e = 0; e < t.equations.size(); ++e) {
                const auto& c = t.cells[r][e];
                auto row = prefix;
                row.insert(row.end(), {t.row_labels[r], t.equations[e], format_number(c.coef), format_number(c.se),
                                       format_number(c.tstat), c.significant_5pct ? "true" : "false",
                                       std::to_string(t.t_eff), format_number(t.max_root_modulus), ""});
                out += csv_row(row);
            }
        }
    }
    return out;
}

std::string var_tables_markdown(const ExperimentReport& report) {
    std::string out = "# VAR coefficient tables: " + report.market + "\n";
    for (const auto& [key, entry] : report.var_tables) {
        out += "\n## VAR(" + std::to_string(key.lag) + ") " + transform_title(key.transform) + " (" +
               sentiment_label(key.transform, key.indicator) + "): " + report.market + "\n\n";
        if (!entry.table) {
            out += "Unavailable: " + entry.error + "\n";
            continue;
        }
        out += render_var_table_markdown(*entry.table);
        out += "\nCoefficient (t-statistic); * significant at 5%. T_eff = " + std::to_string(entry.table->t_eff) +
               ", max companion root modulus = " + format_fixed4(entry.table->max_root_modulus) + ".\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Indicators and ADF

std::string indicators_csv(const TimeSeries& returns, std::span<const BreadthRecord> breadth, const TimeSeries& sent,
                           const TimeSeries& arms) {
    struct Row {
        std::optional<double> rt, sent, arms;
        const BreadthRecord* rec = nullptr;
    };
    std::map<Date, Row> rows;
    for (const auto& p : returns.points()) rows[p.date].rt = p.value;
    for (const auto& p : sent.points()) rows[p.date].sent = p.value;
    for (const auto& p : arms.points()) rows[p.date].arms = p.value;
    for (const auto& r : breadth) rows[r.date].rec = &r;

    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    std::string out = csv_row({"date", "rt", "sent", "arms", "adv", "dec", "unchanged", "adv_vol", "dec_vol"});
    for (const auto& [date, r] : rows) {
        std::vector<std::string> row{date.iso(), opt(r.rt), opt(r.sent), opt(r.arms)};
        if (r.rec) {
            row.insert(row.end(), {std::to_string(r.rec->adv), std::to_string(r.rec->dec),
                                   std::to_string(r.rec->unchanged), std::to_string(r.rec->adv_vol),
                                   std::to_string(r.rec->dec_vol)});
        } else {
            row.insert(row.end(), {"", "", "", "", ""});
        }
        out += csv_row(row);
    }
    return out;
}

std::string series_csv(const TimeSeries& s) {
    std::string out = "date,value\n";
    for (const auto& p : s.points()) {
        if (p.value) out += p.date.iso() + "," + format_number(*p.value) + "\n";
    }
    return out;
}

std::vector<AdfRow> adf_battery(std::span<const TimeSeries> series) {
    std::vector<AdfRow> rows;
    for (const auto& s : series) {
        AdfRow row;
        row.series = s.name();
        const auto values = s.defined_values();
        row.max_lags = schwert_max_lags(values.size());
        if (values.size() < row.max_lags + 10) row.max_lags = values.size() >= 10 ? values.size() - 10 : 0;
        try {
            row.result = adf_test(std::span<const double>(values), row.max_lags);
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string adf_csv(std::span<const AdfRow> rows) {
    std::string out = csv_row({"series", "nobs", "max_lags", "lags_used", "statistic", "critical_5pct",
                               "reject_unit_root_5pct", "error"});
    for (const auto& r : rows) {
        if (r.result) {
            out += csv_row({r.series, std::to_string(r.result->nobs), std::to_string(r.max_lags),
                            std::to_string(r.result->lags_used), format_number(r.result->statistic),
                            format_number(kAdfCritical5Pct), r.result->reject_unit_root_5pct ? "true" : "false", ""});
        } else {
            out += csv_row({r.series, "", std::to_string(r.max_lags), "", "", format_number(kAdfCritical5Pct), "",
                            r.error});
        }
    }
    return out;
}

}  // namespace sentcause
