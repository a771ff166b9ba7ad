// Command-line front end for the UCP scattering engine. Talks to the core
// exclusively through the C API (ucp.h); formatting and orchestration live
// here.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ucp.h"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kUnitsNote = "hbar=1, 2m=1";

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string engine_error() {
    char buf[1024];
    if (ucp_last_error(buf, sizeof(buf)) == UCP_OK && buf[0]) return buf;
    return "unknown engine error";
}

[[noreturn]] void die(ucp_status st) {
    std::cerr << "error (" << ucp_status_name(st) << "): " << engine_error() << "\n";
    std::exit(1);
}

void check(ucp_status st) {
    if (st != UCP_OK) die(st);
}

struct SpecFlags {
    int N = 2;
    double rho = 3.0;
    double mu = 1.0;
    double nu = 0.0;
    int S = 0;
    double L = 1.0;
    double V = 0.0;
};

using Handle = std::unique_ptr<ucp_spec, decltype(&ucp_spec_free)>;

Handle make_spec(const SpecFlags& f) {
    ucp_spec* raw = nullptr;
    check(ucp_spec_create(f.N, f.rho, f.mu, f.nu, f.S, f.L, f.V, &raw));
    return Handle(raw, &ucp_spec_free);
}

// key/value pairs in emission order; shared by the CSV header block and the
// JSON meta object
struct Meta {
    std::vector<std::pair<std::string, ordered_json>> entries;

    void add(const std::string& key, ordered_json value) { entries.emplace_back(key, std::move(value)); }
    void add_spec(const SpecFlags& f) {
        add("N", f.N);
        add("rho", f.rho);
        add("mu", f.mu);
        add("nu", f.nu);
        add("S", f.S);
        add("L", f.L);
        add("V", f.V);
    }
    ordered_json json() const {
        ordered_json j = ordered_json::object();
        for (const auto& [k, v] : entries) j[k] = v;
        return j;
    }
};

class Output {
public:
    Output(const std::string& path, const std::string& format) : format_(format) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                std::cerr << "error: cannot open output file " << path << "\n";
                std::exit(1);
            }
        }
    }

    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    bool json() const { return format_ == "json"; }

    // CSV: '#'-prefixed meta block, one header row, LF endings, 17 significant digits
    void write_csv(const Meta& meta, const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows) {
        std::ostream& os = stream();
        for (const auto& [k, v] : meta.entries) {
            os << "# " << k << " = ";
            if (v.is_string())
                os << v.get<std::string>();
            else if (v.is_number_float())
                os << fmt17(v.get<double>());
            else
                os << v.dump();
            os << "\n";
        }
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
            os << "\n";
        }
    }

    void write_json(const Meta& meta, const ordered_json& data) {
        ordered_json root = ordered_json::object();
        root["meta"] = meta.json();
        root["data"] = data;
        stream() << root.dump(2) << "\n";
    }

private:
    std::string format_;
    std::ofstream file_;
};

ucp_method parse_method(const std::string& m) {
    if (m == "closed") return UCP_METHOD_CLOSED;
    if (m == "oracle") return UCP_METHOD_ORACLE;
    return UCP_METHOD_BOTH;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ucp: quantum transmission through generalized unified Cantor potentials"};
    app.require_subcommand(1);

    SpecFlags spec;
    std::string out_path;
    std::string format = "csv";
    int workers = 0;

    // spec + common flags are configurable through a flat key=value file;
    // explicit flags override it
    app.set_config("--config", "", "config file (key = value lines, # comments)");
    app.add_option("--N", spec.N, "children per segment (N >= 2)")->configurable(true);
    app.add_option("--rho", spec.rho, "scaling base (rho > 1)")->configurable(true);
    app.add_option("--mu", spec.mu, "exponent mu")->configurable(true);
    app.add_option("--nu", spec.nu, "exponent nu")->configurable(true);
    app.add_option("--S", spec.S, "stage (S >= 0)")->configurable(true);
    app.add_option("--L", spec.L, "total span (L > 0)")->configurable(true);
    app.add_option("--V", spec.V, "barrier height (V >= 0)")->configurable(true);
    app.add_option("--out", out_path, "output path (default stdout)")->configurable(true);
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->configurable(true);
    app.add_option("--workers", workers, "worker threads (0 = auto)")
        ->check(CLI::NonNegativeNumber)
        ->configurable(true);

    auto add_output_meta = [&](Meta& meta, const std::string& command) {
        meta.add("command", command);
        meta.add_spec(spec);
        meta.add("version", ucp_version());
        meta.add("units", kUnitsNote);
    };

    // validate
    auto* cmd_validate = app.add_subcommand("validate", "check spec constraints");
    cmd_validate->fallthrough();

    // layout
    auto* cmd_layout = app.add_subcommand("layout", "emit the explicit barrier intervals");
    cmd_layout->fallthrough();
    long long layout_cap = 1000000;
    cmd_layout->add_option("--cap", layout_cap, "segment cap (error above this)")
        ->check(CLI::PositiveNumber);

    // transmit
    auto* cmd_transmit = app.add_subcommand("transmit", "T and R at a single wavenumber");
    cmd_transmit->fallthrough();
    double tk = 1.0;
    std::string tmethod = "closed";
    cmd_transmit->add_option("--k", tk, "wavenumber (k > 0)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_transmit->add_option("--method", tmethod, "closed | oracle | both")
        ->check(CLI::IsMember({"closed", "oracle", "both"}));

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "T(k), R(k) over a uniform k grid");
    cmd_sweep->fallthrough();
    double s_kmin = 0.1, s_kmax = 10.0;
    long long s_n = 1000;
    std::string s_method = "closed";
    cmd_sweep->add_option("--kmin", s_kmin)->required()->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--kmax", s_kmax)->required()->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--n", s_n, "grid points")->check(CLI::Range(2ll, 100000000ll));
    cmd_sweep->add_option("--method", s_method)->check(CLI::IsMember({"closed", "oracle", "both"}));

    // grid
    auto* cmd_grid = app.add_subcommand("grid", "T over a rho-k grid (closed form)");
    cmd_grid->fallthrough();
    double g_rmin = 1.25, g_rmax = 1.5, g_kmin = 6.0, g_kmax = 8.0;
    long long g_nr = 100, g_nk = 100;
    cmd_grid->add_option("--rho-min", g_rmin)->required();
    cmd_grid->add_option("--rho-max", g_rmax)->required();
    cmd_grid->add_option("--n-rho", g_nr)->check(CLI::PositiveNumber);
    cmd_grid->add_option("--kmin", g_kmin)->required()->check(CLI::PositiveNumber);
    cmd_grid->add_option("--kmax", g_kmax)->required()->check(CLI::PositiveNumber);
    cmd_grid->add_option("--n-k", g_nk)->check(CLI::PositiveNumber);

    // saturate
    auto* cmd_saturate = app.add_subcommand("saturate", "stage-pair |log10 T| sup distances");
    cmd_saturate->fallthrough();
    std::vector<int> stages;
    double sat_kmin = 0.01, sat_kmax = 4.0;
    long long sat_n = 400;
    cmd_saturate->add_option("--stages", stages, "stage list")->required()->expected(-2);
    cmd_saturate->add_option("--kmin", sat_kmin)->check(CLI::PositiveNumber);
    cmd_saturate->add_option("--kmax", sat_kmax)->check(CLI::PositiveNumber);
    cmd_saturate->add_option("--n", sat_n)->check(CLI::Range(2ll, 100000000ll));

    // scaling
    auto* cmd_scaling = app.add_subcommand("scaling", "log R vs log k slope at area-preserved height");
    cmd_scaling->fallthrough();
    double sc_V0 = 10.0, sc_klo = 100.0, sc_khi = 10000.0;
    long long sc_n = 800;
    std::string sc_fit = "exact";
    cmd_scaling->add_option("--V0", sc_V0, "stage-0 height")->required()->check(CLI::PositiveNumber);
    cmd_scaling->add_option("--klo", sc_klo)->required()->check(CLI::PositiveNumber);
    cmd_scaling->add_option("--khi", sc_khi)->required()->check(CLI::PositiveNumber);
    cmd_scaling->add_option("--n", sc_n)->check(CLI::Range(2ll, 100000000ll));
    cmd_scaling->add_option("--fit-method", sc_fit, "exact | asymptotic")
        ->check(CLI::IsMember({"exact", "asymptotic"}));

    // resonances
    auto* cmd_resonances = app.add_subcommand("resonances", "locate sharp transmission peaks");
    cmd_resonances->fallthrough();
    double r_kmin = 0.01, r_kmax = 8.0, r_threshold = 0.99;
    long long r_coarse = 4000;
    cmd_resonances->add_option("--kmin", r_kmin)->check(CLI::PositiveNumber);
    cmd_resonances->add_option("--kmax", r_kmax)->check(CLI::PositiveNumber);
    cmd_resonances->add_option("--coarse", r_coarse, "coarse scan points")
        ->check(CLI::Range(100ll, 100000000ll));
    cmd_resonances->add_option("--threshold", r_threshold, "peak threshold in (0,1)");

    // descriptors
    auto* cmd_descriptors = app.add_subcommand("descriptors", "fractal dimension and lacunarity parameters");
    cmd_descriptors->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    Handle h = make_spec(spec);

    if (cmd_validate->parsed()) {
        int ok = 0;
        char report[4096];
        check(ucp_spec_validate(h.get(), &ok, report, sizeof(report)));
        if (ok) {
            std::cout << "ok\n";
            return 0;
        }
        std::cout << "invalid: " << report << "\n";
        return 1;
    }

    Output out(out_path, format);

    if (cmd_layout->parsed()) {
        long long count = 0;
        check(ucp_layout_count(h.get(), layout_cap, &count));
        std::vector<double> starts(count), ends(count);
        long long written = 0;
        check(ucp_layout_build(h.get(), layout_cap, starts.data(), ends.data(), count, &written));

        Meta meta;
        add_output_meta(meta, "layout");
        meta.add("segments", written);
        if (out.json()) {
            ordered_json data;
            data["index"] = ordered_json::array();
            data["start"] = ordered_json::array();
            data["end"] = ordered_json::array();
            data["width"] = ordered_json::array();
            for (long long i = 0; i < written; ++i) {
                data["index"].push_back(i);
                data["start"].push_back(starts[i]);
                data["end"].push_back(ends[i]);
                data["width"].push_back(ends[i] - starts[i]);
            }
            out.write_json(meta, data);
        } else {
            std::vector<std::vector<std::string>> rows;
            rows.reserve(written);
            for (long long i = 0; i < written; ++i)
                rows.push_back({std::to_string(i), fmt17(starts[i]), fmt17(ends[i]),
                                fmt17(ends[i] - starts[i])});
            out.write_csv(meta, {"index", "start", "end", "width"}, rows);
        }
        return 0;
    }

    if (cmd_transmit->parsed()) {
        double T = 0.0, R = 0.0, disc = 0.0;
        int warn = 0;
        check(ucp_transmission(h.get(), tk, parse_method(tmethod), &T, &R, &disc, &warn));

        Meta meta;
        add_output_meta(meta, "transmit");
        meta.add("k", tk);
        meta.add("method", tmethod);
        if (warn) meta.add("warning", "degenerate energy: |k^2 - V| < 1e-6 (series branch used)");
        if (out.json()) {
            ordered_json data;
            data["T"] = T;
            data["R"] = R;
            data["method"] = tmethod;
            if (tmethod == "both") data["discrepancy"] = disc;
            if (warn) data["degenerate"] = true;
            out.write_json(meta, data);
        } else {
            std::vector<std::string> header{"k", "T", "R"};
            std::vector<std::string> row{fmt17(tk), fmt17(T), fmt17(R)};
            if (tmethod == "both") {
                header.push_back("discrepancy");
                row.push_back(fmt17(disc));
            }
            out.write_csv(meta, header, {row});
        }
        return 0;
    }

    if (cmd_sweep->parsed()) {
        const ucp_method m = parse_method(s_method);
        std::vector<double> k(s_n), t(s_n), r(s_n);
        std::vector<double> t2, r2;
        double disc = 0.0;
        double* t2p = nullptr;
        double* r2p = nullptr;
        if (m == UCP_METHOD_BOTH) {
            t2.resize(s_n);
            r2.resize(s_n);
            t2p = t2.data();
            r2p = r2.data();
        }
        check(ucp_sweep(h.get(), s_kmin, s_kmax, s_n, m, workers, k.data(), t.data(), r.data(),
                        t2p, r2p, &disc));

        Meta meta;
        add_output_meta(meta, "sweep");
        meta.add("k_min", s_kmin);
        meta.add("k_max", s_kmax);
        meta.add("n", s_n);
        meta.add("method", s_method);
        if (m == UCP_METHOD_BOTH) meta.add("max_discrepancy", disc);
        if (out.json()) {
            ordered_json data;
            data["k"] = k;
            data["T"] = t;
            data["R"] = r;
            if (m == UCP_METHOD_BOTH) {
                data["T_oracle"] = t2;
                data["R_oracle"] = r2;
            }
            out.write_json(meta, data);
        } else {
            std::vector<std::string> header{"k", "T", "R"};
            if (m == UCP_METHOD_BOTH) {
                header.push_back("T_oracle");
                header.push_back("R_oracle");
            }
            std::vector<std::vector<std::string>> rows;
            rows.reserve(s_n);
            for (long long i = 0; i < s_n; ++i) {
                std::vector<std::string> row{fmt17(k[i]), fmt17(t[i]), fmt17(r[i])};
                if (m == UCP_METHOD_BOTH) {
                    row.push_back(fmt17(t2[i]));
                    row.push_back(fmt17(r2[i]));
                }
                rows.push_back(std::move(row));
            }
            out.write_csv(meta, header, rows);
        }
        return 0;
    }

    if (cmd_grid->parsed()) {
        std::vector<double> rho_axis(g_nr), k_axis(g_nk), t(g_nr * g_nk);
        std::vector<unsigned char> row_valid(g_nr);
        check(ucp_grid(h.get(), g_rmin, g_rmax, g_nr, g_kmin, g_kmax, g_nk, workers,
                       rho_axis.data(), k_axis.data(), t.data(), row_valid.data()));

        Meta meta;
        add_output_meta(meta, "grid");
        meta.add("rho_min", g_rmin);
        meta.add("rho_max", g_rmax);
        meta.add("n_rho", g_nr);
        meta.add("k_min", g_kmin);
        meta.add("k_max", g_kmax);
        meta.add("n_k", g_nk);
        if (out.json()) {
            ordered_json data;
            data["rho_axis"] = rho_axis;
            data["k_axis"] = k_axis;
            ordered_json tt = ordered_json::array();
            for (long long rI = 0; rI < g_nr; ++rI) {
                ordered_json row = ordered_json::array();
                for (long long kI = 0; kI < g_nk; ++kI) {
                    const double v = t[rI * g_nk + kI];
                    if (std::isnan(v))
                        row.push_back(nullptr); // JSON has no NaN
                    else
                        row.push_back(v);
                }
                tt.push_back(std::move(row));
            }
            data["T"] = tt;
            ordered_json rv = ordered_json::array();
            for (long long rI = 0; rI < g_nr; ++rI) rv.push_back(row_valid[rI] != 0);
            data["row_valid"] = rv;
            out.write_json(meta, data);
        } else {
            std::vector<std::vector<std::string>> rows;
            rows.reserve(g_nr * g_nk);
            for (long long rI = 0; rI < g_nr; ++rI)
                for (long long kI = 0; kI < g_nk; ++kI)
                    rows.push_back({fmt17(rho_axis[rI]), fmt17(k_axis[kI]),
                                    std::isnan(t[rI * g_nk + kI]) ? "nan"
                                                                  : fmt17(t[rI * g_nk + kI])});
            out.write_csv(meta, {"rho", "k", "T"}, rows);
        }
        return 0;
    }

    if (cmd_saturate->parsed()) {
        const int ns = static_cast<int>(stages.size());
        std::vector<double> dist(static_cast<std::size_t>(ns) * ns);
        check(ucp_saturation(h.get(), stages.data(), ns, sat_kmin, sat_kmax, sat_n, workers,
                             dist.data()));

        Meta meta;
        add_output_meta(meta, "saturate");
        meta.add("stages", stages);
        meta.add("k_min", sat_kmin);
        meta.add("k_max", sat_kmax);
        meta.add("n", sat_n);
        if (out.json()) {
            ordered_json data;
            data["stages"] = stages;
            ordered_json mat = ordered_json::array();
            for (int a = 0; a < ns; ++a) {
                ordered_json row = ordered_json::array();
                for (int b = 0; b < ns; ++b) row.push_back(dist[a * ns + b]);
                mat.push_back(std::move(row));
            }
            data["dist"] = mat;
            out.write_json(meta, data);
        } else {
            std::vector<std::vector<std::string>> rows;
            for (int a = 0; a < ns; ++a)
                for (int b = 0; b < ns; ++b)
                    rows.push_back({std::to_string(stages[a]), std::to_string(stages[b]),
                                    fmt17(dist[a * ns + b])});
            out.write_csv(meta, {"stage_a", "stage_b", "sup_log10_dist"}, rows);
        }
        return 0;
    }

    if (cmd_scaling->parsed()) {
        double slope = 0.0, intercept = 0.0, rms = 0.0, height = 0.0;
        long long used = 0, excluded = 0;
        check(ucp_scaling_fit(h.get(), sc_V0, sc_klo, sc_khi, sc_n,
                              sc_fit == "exact" ? UCP_FIT_EXACT : UCP_FIT_ASYMPTOTIC, &slope,
                              &intercept, &rms, &used, &excluded, &height));

        Meta meta;
        add_output_meta(meta, "scaling");
        meta.add("V0", sc_V0);
        meta.add("k_lo", sc_klo);
        meta.add("k_hi", sc_khi);
        meta.add("n", sc_n);
        meta.add("fit_method", sc_fit);
        if (out.json()) {
            ordered_json data;
            data["slope"] = slope;
            data["intercept"] = intercept;
            data["residual_rms"] = rms;
            data["n_used"] = used;
            data["n_excluded"] = excluded;
            data["V_S"] = height;
            out.write_json(meta, data);
        } else {
            out.write_csv(meta, {"slope", "intercept", "residual_rms", "n_used", "n_excluded", "V_S"},
                          {{fmt17(slope), fmt17(intercept), fmt17(rms), std::to_string(used),
                            std::to_string(excluded), fmt17(height)}});
        }
        return 0;
    }

    if (cmd_resonances->parsed()) {
        const long long cap = 100000;
        std::vector<double> kstar(cap), tstar(cap), width(cap);
        long long count = 0;
        int plateau = 0;
        check(ucp_find_resonances(h.get(), r_kmin, r_kmax, r_coarse, r_threshold, kstar.data(),
                                  tstar.data(), width.data(), cap, &count, &plateau));
        const long long n = std::min(cap, count);

        Meta meta;
        add_output_meta(meta, "resonances");
        meta.add("k_min", r_kmin);
        meta.add("k_max", r_kmax);
        meta.add("coarse", r_coarse);
        meta.add("threshold", r_threshold);
        meta.add("plateau", plateau != 0);
        if (out.json()) {
            ordered_json data;
            data["plateau"] = plateau != 0;
            data["k"] = ordered_json::array();
            data["T"] = ordered_json::array();
            data["width"] = ordered_json::array();
            for (long long i = 0; i < n; ++i) {
                data["k"].push_back(kstar[i]);
                data["T"].push_back(tstar[i]);
                data["width"].push_back(width[i]);
            }
            out.write_json(meta, data);
        } else {
            std::vector<std::vector<std::string>> rows;
            for (long long i = 0; i < n; ++i)
                rows.push_back({fmt17(kstar[i]), fmt17(tstar[i]), fmt17(width[i])});
            out.write_csv(meta, {"k", "T", "width"}, rows);
        }
        return 0;
    }

    if (cmd_descriptors->parsed()) {
        double D = 0.0;
        check(ucp_fractal_dimension(spec.N, spec.rho, &D));
        const double zeta = 1.0 / spec.rho;

        double g_c = 0.0, eps_min = 0.0, eps_reg = 0.0, eps_max = 0.0;
        int eps_max_defined = 0;
        const bool lacunarity_ok =
            ucp_lacunarity(spec.N, zeta, &g_c, &eps_min, &eps_reg, &eps_max, &eps_max_defined) ==
            UCP_OK;

        double d_alt = 0.0;
        const bool have_alt = spec.N == 2 && ucp_fractal_dimension_alt(zeta, &d_alt) == UCP_OK;

        double eps_d1 = 0.0;
        const bool have_d1 = ucp_lacunarity_epsilon(h.get(), &eps_d1) == UCP_OK;

        Meta meta;
        add_output_meta(meta, "descriptors");
        if (out.json()) {
            ordered_json data;
            data["D"] = D;
            data["zeta"] = zeta;
            if (have_alt) data["D_alt"] = d_alt;
            if (lacunarity_ok) {
                data["g_c"] = g_c;
                data["eps_min"] = eps_min;
                data["eps_reg"] = eps_reg;
                if (eps_max_defined)
                    data["eps_max"] = eps_max;
                else
                    data["eps_max"] = nullptr; // undefined for N = 2, 3
            }
            if (have_d1) data["epsilon_d1"] = eps_d1;
            out.write_json(meta, data);
        } else {
            std::vector<std::string> header{"D", "zeta"};
            std::vector<std::string> row{fmt17(D), fmt17(zeta)};
            if (have_alt) {
                header.push_back("D_alt");
                row.push_back(fmt17(d_alt));
            }
            if (lacunarity_ok) {
                header.insert(header.end(), {"g_c", "eps_min", "eps_reg", "eps_max"});
                row.insert(row.end(), {fmt17(g_c), fmt17(eps_min), fmt17(eps_reg),
                                       eps_max_defined ? fmt17(eps_max) : "na"});
            }
            if (have_d1) {
                header.push_back("epsilon_d1");
                row.push_back(fmt17(eps_d1));
            }
            out.write_csv(meta, header, {row});
        }
        return 0;
    }

    std::cerr << "usage error: no command\n";
    return 2;
}
