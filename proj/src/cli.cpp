#include "orderable/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "orderable/error.hpp"
#include "orderable/knot.hpp"
#include "orderable/precise.hpp"
#include "orderable/representation.hpp"
#include "orderable/rootcurve.hpp"
#include "orderable/slopes.hpp"

namespace orderable {

using ojson = nlohmann::ordered_json;

const char* command_name(Command c) noexcept {
    switch (c) {
        case Command::Roots: return "roots";
        case Command::Sweep: return "sweep";
        case Command::Certify: return "certify";
        case Command::CheckRep: return "check-rep";
        case Command::Asymptotics: return "asymptotics";
        case Command::Plot: return "plot";
    }
    return "?";
}

const char* format_name(OutFormat f) noexcept {
    switch (f) {
        case OutFormat::Csv: return "csv";
        case OutFormat::Json: return "json";
        case OutFormat::Svg: return "svg";
    }
    return "?";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::Roots, Command::Sweep, Command::Certify, Command::CheckRep, Command::Asymptotics,
                      Command::Plot})
        if (name == command_name(c)) return c;
    throw ParseError(ParseError::Kind::BadArgument, "unknown command '" + name + "'");
}

OutFormat parse_format(const std::string& name) {
    for (OutFormat f : {OutFormat::Csv, OutFormat::Json, OutFormat::Svg})
        if (name == format_name(f)) return f;
    throw ParseError(ParseError::Kind::BadArgument, "unknown format '" + name + "'");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

ojson number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

struct Resolved {
    KnotSpec spec;
    double y_min;
    double y_max;
    OutFormat format;
    std::vector<int> branches;
};

Resolved resolve(const RunConfig& cfg) {
    Resolved r;
    r.spec = parse_conway(cfg.knot);
    const double left = left_endpoint(r.spec);
    r.y_min = cfg.y_min.value_or(left + 1e-8);
    r.y_max = cfg.y_max;
    auto bad = [](const std::string& what) { return ParseError(ParseError::Kind::BadArgument, what); };
    if (!(r.y_min > left))
        throw bad("--y-min must exceed the left endpoint " + format_double(left) + " of " + r.spec.to_string());
    if (!(r.y_min < r.y_max)) throw bad("--y-min must be below --y-max");
    if (cfg.samples < 2) throw bad("--samples must be at least 2");
    if (!(cfg.tol > 0.0)) throw bad("--tol must be positive");
    if (cfg.q_max < 1) throw bad("--q-max must be at least 1");
    if (cfg.y && !admissible(r.spec, *cfg.y))
        throw bad("--y must exceed the left endpoint " + format_double(left) + " of " + r.spec.to_string());
    if (cfg.branch) {
        if (*cfg.branch < 0 || *cfg.branch >= r.spec.n)
            throw bad("--branch must lie in [0, " + std::to_string(r.spec.n - 1) + "]");
        r.branches = {*cfg.branch};
    } else {
        r.branches = default_branches(r.spec);
    }
    switch (cfg.command) {
        case Command::Certify: r.format = OutFormat::Json; break;
        case Command::Plot: r.format = OutFormat::Svg; break;
        default: r.format = cfg.format.value_or(OutFormat::Csv);
    }
    if (cfg.command == Command::Certify && cfg.format && *cfg.format != OutFormat::Json)
        throw bad("certify writes JSON only");
    if (cfg.command == Command::Plot && cfg.format && *cfg.format != OutFormat::Svg)
        throw bad("plot writes SVG only");
    if (cfg.command != Command::Plot && r.format == OutFormat::Svg)
        throw bad("svg output is only available for plot");
    if ((cfg.command == Command::CheckRep) && !cfg.y) throw bad("check-rep needs --y");
    return r;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::pair<std::string, std::string>> config_metadata(const RunConfig& cfg, const Resolved& r) {
    return {
        {"artifact", std::string(kArtifactName) + " " + kArtifactVersion},
        {"schema", kSchemaVersion},
        {"command", command_name(cfg.command)},
        {"knot", r.spec.to_string()},
        {"family", family_name(r.spec.family)},
        {"m", std::to_string(r.spec.m)},
        {"n", std::to_string(r.spec.n)},
        {"y", cfg.y ? format_double(*cfg.y) : "none"},
        {"y_min", format_double(r.y_min)},
        {"y_max", format_double(r.y_max)},
        {"samples", std::to_string(cfg.samples)},
        {"tol", format_double(cfg.tol)},
        {"format", format_name(r.format)},
        {"branches", join_ints(r.branches)},
        {"q_max", std::to_string(cfg.q_max)},
        {"grid", "log-spaced in y - left up to left + 1, log-spaced in y beyond; slope sweeps add log midpoints "
                 "where |df| > 0.1"},
    };
}

ojson config_json(const RunConfig& cfg, const Resolved& r) {
    ojson j;
    j["knot"] = cfg.knot;
    j["normalized"] = r.spec.to_string();
    j["family"] = family_name(r.spec.family);
    j["m"] = r.spec.m;
    j["n"] = r.spec.n;
    j["command"] = command_name(cfg.command);
    j["y"] = cfg.y ? number(*cfg.y) : ojson(nullptr);
    j["yMin"] = r.y_min;
    j["yMax"] = r.y_max;
    j["samples"] = cfg.samples;
    j["tol"] = cfg.tol;
    j["outFormat"] = format_name(r.format);
    j["outPath"] = cfg.out_path;
    j["branches"] = r.branches;
    j["qMax"] = cfg.q_max;
    return j;
}

std::string table_json(const ResultTable& t, const ojson& config) {
    ojson j;
    j["schema"] = kSchemaVersion;
    j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
    j["config"] = config;
    ojson meta = ojson::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    j["metadata"] = meta;
    j["header"] = t.header;
    ojson rows = ojson::array();
    for (const auto& row : t.rows) {
        ojson r = ojson::array();
        for (double v : row) r.push_back(number(v));
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::vector<double> y_values(const RunConfig& cfg, const Resolved& r) {
    if (cfg.y) return {*cfg.y};
    return default_grid(r.spec, r.y_min, r.y_max, cfg.samples);
}

ResultTable roots_table(const RunConfig& cfg, const Resolved& r) {
    ResultTable t;
    t.header = {"y", "branch", "x", "offset", "bracket", "residual"};
    const auto ys = y_values(cfg, r);
    for (double y : ys) {
        const RootCurveSample s = roots_at(r.spec, y, cfg.tol);
        for (int j = 0; j < r.spec.n; ++j)
            t.rows.push_back({y, static_cast<double>(j), s.roots[j], s.offsets[j], s.brackets[j], s.residuals[j]});
    }
    return t;
}

CertifyOptions certify_options(const RunConfig& cfg) {
    CertifyOptions o;
    o.samples = cfg.samples;
    o.q_max = cfg.q_max;
    o.tol = cfg.tol;
    return o;
}

struct BranchSweep {
    int branch;
    std::vector<std::vector<SlopeSample>> segments;
};

std::vector<BranchSweep> sweeps(const RunConfig& cfg, const Resolved& r) {
    std::vector<BranchSweep> out;
    for (int b : r.branches) out.push_back({b, sweep_branch(r.spec, b, r.y_min, r.y_max, certify_options(cfg))});
    return out;
}

ResultTable sweep_table(const RunConfig& cfg, const Resolved& r) {
    ResultTable t;
    t.header = {"y", "x", "logM", "logL", "f", "index", "residual"};
    for (const auto& bs : sweeps(cfg, r))
        for (const auto& seg : bs.segments)
            for (const SlopeSample& s : seg)
                t.rows.push_back({s.y, s.x, s.logM, s.logL, s.f, static_cast<double>(s.index), s.residual});
    return t;
}

ResultTable check_rep_table(const RunConfig& cfg, const Resolved& r) {
    ResultTable t;
    t.header = {"y",         "branch", "x",    "M",     "relation_residual",    "lower_left",    "L_closed",
                "L_word",    "reducible", "index", "bits", "relation_residual_mp", "lower_left_mp", "L_rel_diff_mp"};
    const double y = *cfg.y;
    const double nan = std::nan("");
    for (int b : r.branches) {
        double x = 0.0, offset = 0.0;
        if (!r.spec.even() && b == 0) {
            const PrincipalPoint pt = principal_branch_odd(r.spec, y, cfg.tol);
            x = pt.x;
            offset = principal_offset(pt);
        } else {
            const RootCurveSample rc = roots_at(r.spec, y, cfg.tol);
            x = rc.roots[b];
            offset = rc.offsets[b];
        }
        const RepSample s = rep_sample(r.spec, x, y);
        const int index = slope_at(r.spec, b, y, std::nullopt, cfg.tol).index;
        std::vector<double> row{y,        static_cast<double>(b), x,       s.M, s.relation_residual, s.lower_left,
                                s.L_closed, s.L_word,             s.reducible ? 1.0 : 0.0, static_cast<double>(index)};
        if (s.reducible || offset == 0.0) {
            row.insert(row.end(), {nan, nan, nan, nan});
        } else {
            const PreciseRep p = precise_rep(r.spec, y, offset);
            row.insert(row.end(), {static_cast<double>(p.bits), p.relation_residual, p.lower_left, p.L_rel_diff});
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ResultTable asymptotics_table(const Resolved& r) {
    const AsymptoticsReport rep = asymptotics_report(r.spec);
    ResultTable t;
    t.header = {"y", "y_minus_left", "x", "delta_hat"};
    const double left = left_endpoint(r.spec);
    for (std::size_t i = 0; i < rep.near_delta.size(); ++i)
        t.rows.push_back({left + rep.near_delta[i], rep.near_delta[i], rep.near_x[i], std::nan("")});
    for (std::size_t i = 0; i < rep.far_y.size(); ++i) {
        const PrincipalPoint pt = principal_branch_odd(r.spec, rep.far_y[i]);
        t.rows.push_back({rep.far_y[i], rep.far_y[i] - left, pt.x, rep.delta_hat[i]});
    }
    t.metadata.emplace_back("min_x", format_double(rep.min_x));
    t.metadata.emplace_back("min_x_at_y", format_double(rep.min_x_y));
    return t;
}

std::string certificate_json(const RunConfig& cfg, const Resolved& r) {
    const SlopeCertificate c =
        certify_interval(r.spec, r.branches, {r.y_min, r.y_max}, certify_options(cfg));
    ojson j;
    j["schema"] = kSchemaVersion;
    j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
    j["config"] = config_json(cfg, r);
    ojson cert;
    cert["knot"] = c.spec.to_string();
    cert["family"] = family_name(c.spec.family);
    cert["branches"] = c.branches;
    cert["yRange"] = {c.y_range.lo, c.y_range.hi};
    cert["attained"] = {c.attained.lo, c.attained.hi};
    cert["target"] = {{"lo", c.target.lo},
                      {"hi", c.target.hi},
                      {"loClosed", c.spec.family == Family::EvenMinus},
                      {"hiClosed", false}};
    cert["coveredFraction"] = c.covered_fraction;
    ojson per = ojson::array();
    for (const BranchRange& b : c.per_branch) {
        ojson e;
        e["branch"] = b.branch;
        e["index"] = b.index;
        e["indexConstant"] = b.index_constant;
        e["samples"] = b.samples;
        e["refinements"] = b.refinements;
        ojson segs = ojson::array();
        for (std::size_t i = 0; i < b.y_segments.size(); ++i)
            segs.push_back({{"y", {b.y_segments[i].lo, b.y_segments[i].hi}},
                            {"f", {b.f_ranges[i].lo, b.f_ranges[i].hi}}});
        e["segments"] = segs;
        per.push_back(e);
    }
    cert["perBranch"] = per;
    ojson wit = ojson::array();
    for (const Witness& w : c.witnesses)
        wit.push_back({{"p", w.p},
                       {"q", w.q},
                       {"slope", static_cast<double>(w.p) / w.q},
                       {"y", w.y},
                       {"residual", w.residual},
                       {"index", w.index},
                       {"branch", w.branch}});
    cert["witnesses"] = wit;
    j["certificate"] = cert;
    return j.dump(2) + "\n";
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string plot_svg(const RunConfig& cfg, const Resolved& r) {
    const auto data = sweeps(cfg, r);
    const Interval target = target_interval(r.spec);
    const bool log_axis = r.y_max / r.y_min > 1e3;
    auto ymap = [&](double y) { return log_axis ? std::log10(y) : y; };

    double f_lo = target.lo, f_hi = target.hi;
    for (const auto& bs : data)
        for (const auto& seg : bs.segments)
            for (const SlopeSample& s : seg) {
                f_lo = std::min(f_lo, s.f);
                f_hi = std::max(f_hi, s.f);
            }
    const double pad = 0.05 * (f_hi - f_lo);
    f_lo -= pad;
    f_hi += pad;

    const double W = 800, H = 500, L = 70, R = 20, T = 40, B = 50;
    const double u0 = ymap(r.y_min), u1 = ymap(r.y_max);
    auto px = [&](double y) { return L + (ymap(y) - u0) / (u1 - u0) * (W - L - R); };
    auto py = [&](double f) { return T + (f_hi - f) / (f_hi - f_lo) * (H - T - B); };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    o << "<!-- " << kArtifactName << " " << kArtifactVersion << " schema " << kSchemaVersion << " -->\n";
    o << "<metadata>" << config_json(cfg, r).dump() << "</metadata>\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    o << "<rect x=\"" << fixed(L) << "\" y=\"" << fixed(py(target.hi)) << "\" width=\"" << fixed(W - L - R)
      << "\" height=\"" << fixed(py(target.lo) - py(target.hi))
      << "\" fill=\"#4a90d9\" fill-opacity=\"0.12\" stroke=\"#4a90d9\" stroke-dasharray=\"4 3\"/>\n";
    o << "<text x=\"" << fixed(W / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">f(y) = -log L / log M for "
      << r.spec.to_string() << "</text>\n";

    // axes
    o << "<g stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n"
      << "</g>\n";
    o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    if (log_axis) {
        for (int d = static_cast<int>(std::ceil(u0)); d <= static_cast<int>(std::floor(u1)); ++d) {
            const double x = px(std::pow(10.0, d));
            o << "<line x1=\"" << fixed(x) << "\" y1=\"" << H - B << "\" x2=\"" << fixed(x) << "\" y2=\""
              << H - B + 5 << "\" stroke=\"black\"/><text x=\"" << fixed(x) << "\" y=\"" << H - B + 18
              << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double y = r.y_min + (r.y_max - r.y_min) * i / 5.0;
            const double x = px(y);
            char lab[32];
            std::snprintf(lab, sizeof lab, "%.4g", y);
            o << "<line x1=\"" << fixed(x) << "\" y1=\"" << H - B << "\" x2=\"" << fixed(x) << "\" y2=\""
              << H - B + 5 << "\" stroke=\"black\"/><text x=\"" << fixed(x) << "\" y=\"" << H - B + 18
              << "\" text-anchor=\"middle\">" << lab << "</text>\n";
        }
    }
    const double step = (f_hi - f_lo) > 12 ? 4.0 : ((f_hi - f_lo) > 5 ? 2.0 : 1.0);
    for (double f = std::ceil(f_lo / step) * step; f <= f_hi; f += step) {
        o << "<line x1=\"" << L - 5 << "\" y1=\"" << fixed(py(f)) << "\" x2=\"" << L << "\" y2=\"" << fixed(py(f))
          << "\" stroke=\"black\"/><text x=\"" << L - 8 << "\" y=\"" << fixed(py(f) + 4)
          << "\" text-anchor=\"end\">" << fixed(f) << "</text>\n";
    }
    o << "<text x=\"" << fixed((L + W - R) / 2) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">y"
      << (log_axis ? " (log scale)" : "") << "</text>\n";
    o << "<text x=\"16\" y=\"" << fixed((T + H - B) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fixed((T + H - B) / 2) << ")\">slope f</text>\n";
    o << "</g>\n";

    static const char* colors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#1f77b4", "#8c564b"};
    for (std::size_t b = 0; b < data.size(); ++b) {
        for (const auto& seg : data[b].segments) {
            o << "<polyline fill=\"none\" stroke=\"" << colors[b % 6] << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < seg.size(); ++i)
                o << (i ? " " : "") << fixed(px(seg[i].y)) << "," << fixed(py(seg[i].f));
            o << "\"/>\n";
        }
        o << "<text x=\"" << W - R - 10 << "\" y=\"" << T + 16 + 14 * b << "\" text-anchor=\"end\" fill=\""
          << colors[b % 6] << "\" font-family=\"sans-serif\" font-size=\"12\">branch " << data[b].branch
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string render(const RunConfig& cfg, const Resolved& r) {
    auto emit = [&](ResultTable t) {
        auto meta = config_metadata(cfg, r);
        meta.insert(meta.end(), t.metadata.begin(), t.metadata.end());
        t.metadata = std::move(meta);
        return r.format == OutFormat::Json ? table_json(t, config_json(cfg, r)) : to_csv(t);
    };
    switch (cfg.command) {
        case Command::Roots: return emit(roots_table(cfg, r));
        case Command::Sweep: return emit(sweep_table(cfg, r));
        case Command::CheckRep: return emit(check_rep_table(cfg, r));
        case Command::Asymptotics: return emit(asymptotics_table(r));
        case Command::Certify: return certificate_json(cfg, r);
        case Command::Plot: return plot_svg(cfg, r);
    }
    return {};
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (const auto& [k, v] : table.metadata) out += "# " + k + ": " + v + "\n";
    for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + csv_field(table.header[i]);
    out += "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) throw std::logic_error("row width differs from header width");
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
        out += "\n";
    }
    return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const Resolved r = resolve(config);
        const std::string text = render(config, r);
        if (config.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(config.out_path, std::ios::binary);
            if (!f) {
                err << "error: cannot open " << config.out_path << " for writing\n";
                return 2;
            }
            f << text;
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        err << "numeric error (" << fault_name(e.fault()) << "): " << e.what();
        if (!std::isnan(e.y())) err << " [y = " << format_double(e.y()) << "]";
        else if (config.y) err << " [y = " << format_double(*config.y) << "]";
        err << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace orderable
