#include "cesaro_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cesaro/cesaro.hpp"
#include "cesaro_cli/config.hpp"
#include "cesaro_cli/csv.hpp"

namespace cesaro::cli {
namespace {

/// Flag misuse detected after CLI11 has parsed the line.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> cap_work;
    std::optional<std::uint64_t> cap_enum;
};

class Context {
public:
    Context(const Globals& g, std::ostream& out) : globals_(g), out_(&out) {
        if (!g.config_path.empty()) config_ = load_config(g.config_path);
        if (!g.out_path.empty()) {
            file_ = std::make_unique<std::ofstream>(g.out_path);
            if (!*file_) throw UsageError("cannot open --out file " + g.out_path);
            out_ = file_.get();
        }
    }

    std::ostream& out() { return *out_; }
    bool has_config() const { return config_.has_value(); }

    const ExperimentConfig& config(const std::string& command) const {
        if (!config_) throw UsageError(command + " needs --config");
        return *config_;
    }

    Caps caps() const {
        Caps c = config_ ? config_->caps : Caps{};
        if (globals_.cap_work) c.work = *globals_.cap_work;
        if (globals_.cap_enum) c.enumeration = *globals_.cap_enum;
        return c;
    }

    std::uint64_t seed() const {
        if (globals_.seed) return *globals_.seed;
        return config_ ? config_->seed : 1;
    }

    std::optional<double> alpha() const { return config_ ? config_->alpha : std::nullopt; }

    /// (p, s) from explicit flags, else from the configured group, else (2, 1).
    std::pair<std::uint32_t, std::uint32_t> prime_power(std::optional<std::uint32_t> p,
                                                        std::optional<std::uint32_t> s) const {
        std::uint32_t pp = 2;
        std::uint32_t ss = 1;
        if (config_) {
            const GroupSpec spec = build_group(*config_);
            pp = spec.p();
            ss = spec.s();
        }
        if (p) pp = *p;
        if (s) ss = *s;
        if (!is_prime(pp)) throw UsageError("--p must be prime");
        if (ss == 0) throw UsageError("--s must be positive");
        return {pp, ss};
    }

private:
    Globals globals_;
    std::optional<ExperimentConfig> config_;
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

std::string fmt_u(std::uint64_t v) { return std::to_string(v); }

void write_distribution(std::ostream& os, const SubgroupShift& shift, const CylinderDistribution& dist,
                        const CylinderDistribution& haar) {
    CsvWriter csv(os, {"word", "probability", "haar"});
    for (std::size_t code = 0; code < dist.size(); ++code) {
        if (dist[code] == 0.0 && haar[code] == 0.0) continue;
        const Word w = dist.decode(code);
        csv.row({format_word(shift.spec(), w), format_real(dist[code]), format_real(haar[code])});
    }
}

void write_report(std::ostream& os, const std::vector<std::pair<std::string, std::string>>& rows) {
    CsvWriter csv(os, {"key", "value"});
    for (const auto& [k, v] : rows) csv.row({k, v});
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

int cmd_verify(Context& ctx) {
    const ExperimentConfig& cfg = ctx.config("verify");
    const SubgroupShift shift = build_shift(cfg);
    const GroupSpec& spec = shift.spec();
    std::vector<std::pair<std::string, std::string>> rows;
    std::string exps;
    for (std::size_t i = 0; i < spec.rank(); ++i) exps += (i ? " " : "") + std::to_string(spec.exponents()[i]);
    rows.emplace_back("p", fmt_u(spec.p()));
    rows.emplace_back("exponents", exps);
    rows.emplace_back("order", fmt_u(spec.order()));
    rows.emplace_back("torsion", fmt_u(spec.torsion()));
    rows.emplace_back("subgroup", "ok");
    rows.emplace_back("follower_size", fmt_u(shift.fsize()));
    rows.emplace_back("follower_subgroup", format_word(spec, shift.follower_subgroup()));
    rows.emplace_back("predecessor_subgroup", format_word(spec, shift.predecessor_subgroup()));
    rows.emplace_back("mixing_index", fmt_u(shift.mixing_index()));
    if (cfg.transition_line != 0) {
        const MarkovMeasure mu = build_measure(cfg);
        rows.emplace_back("measure", cfg.haar_transition ? "haar" : "ok");
        for (Symbol g = 0; g < shift.order(); ++g)
            rows.emplace_back("pi[" + format_symbol(spec, g) + "]", format_real(mu.pi(g)));
        const double limit = alpha_limit(mu);
        const RegenSampler sampler = build_regen(mu, cfg.alpha);
        rows.emplace_back("alpha_limit", format_real(limit));
        rows.emplace_back("alpha", format_real(sampler.alpha()));
    }
    for (unsigned l = 1; l <= shift.mixing_index() + 2; ++l)
        rows.emplace_back("gamma_" + std::to_string(l), format_real(shift.gamma(l)));
    write_report(ctx.out(), rows);
    return kOk;
}

int cmd_haar(Context& ctx, unsigned ell) {
    const SubgroupShift shift = build_shift(ctx.config("haar"));
    if (ell == 0) throw UsageError("haar needs a word length >= 1");
    const CylinderDistribution nu = haar_marginal(shift, ell, ctx.caps());
    CsvWriter csv(ctx.out(), {"word", "probability"});
    for (std::size_t code = 0; code < nu.size(); ++code)
        if (nu[code] > 0.0) csv.row({format_word(shift.spec(), nu.decode(code)), format_real(nu[code])});
    return kOk;
}

int cmd_marginal(Context& ctx, std::uint64_t n, unsigned m, const std::string& engine, std::size_t trials) {
    const MarkovMeasure mu = build_measure(ctx.config("marginal"));
    if (m == 0) throw UsageError("--m must be >= 1");
    const Caps caps = ctx.caps();
    std::optional<CylinderDistribution> dist;
    if (engine == "exact") {
        dist = exact_marginal(mu, n, m, caps);
    } else if (engine == "brute") {
        dist = brute_marginal(mu, n, m, caps);
    } else {
        const RegenSampler sampler = build_regen(mu, ctx.alpha());
        MonteCarloOptions opts;
        opts.seed = ctx.seed();
        dist = mc_marginal(sampler, n, m, trials, opts, caps);
    }
    write_distribution(ctx.out(), mu.shift(), *dist, haar_marginal(mu.shift(), m, caps));
    return kOk;
}

int cmd_cesaro(Context& ctx, std::uint64_t N, unsigned m, const std::string& subseq, const std::string& engine,
               std::size_t trials, std::optional<std::size_t> decompose) {
    const MarkovMeasure mu = build_measure(ctx.config("cesaro"));
    if (m == 0) throw UsageError("--m must be >= 1");
    CesaroOptions opts;
    opts.engine = engine == "mc" ? Engine::mc : Engine::exact;
    opts.caps = ctx.caps();
    opts.mc_trials = trials;
    opts.seed = ctx.seed();
    opts.alpha = ctx.alpha();

    if (!decompose) {
        Subsequence sel;
        try {
            sel = Subsequence::parse(subseq);
        } catch (const Error& e) {
            throw UsageError(std::string("--subseq: ") + e.what());
        }
        const CesaroReport rep = cesaro_scan(mu, m, N, sel, opts);
        CsvWriter csv(ctx.out(), {"n", "tv_n", "cesaro_tv"});
        for (const auto& e : rep.per_n) csv.row({fmt_u(e.n), format_real(e.tv_n), format_real(e.cesaro_tv)});
        return kOk;
    }

    const ResidueDecomposition d = residue_decomposition(mu, m, N, *decompose, opts);
    const CylinderDistribution nu = haar_marginal(mu.shift(), m, opts.caps);
    CsvWriter csv(ctx.out(), {"selector", "count", "cesaro_tv", "tv_to_all"});
    for (const auto& c : d.classes)
        csv.row({c.subsequence, fmt_u(c.per_n.size()), format_real(c.final_tv()),
                 format_real(c.empty() ? 0.0 : tv_distance(c.mean, d.all.mean))});
    csv.row({"average", fmt_u(d.all.per_n.size()), format_real(tv_distance(d.average, nu)), format_real(d.gap)});
    csv.row({"all", fmt_u(d.all.per_n.size()), format_real(d.all.final_tv()), format_real(0.0)});
    return kOk;
}

int cmd_isolated(Context& ctx, std::uint64_t n, std::uint64_t m, std::optional<std::uint64_t> l,
                 std::optional<std::uint32_t> p_flag, std::optional<std::uint32_t> s_flag) {
    const auto [p, s] = ctx.prime_power(p_flag, s_flag);
    const IsolationReport rep = isolated_set(n, m, l.value_or(m), p, s);
    CsvWriter csv(ctx.out(), {"k", "binom_mod"});
    for (const auto k : rep.isolated) csv.row({fmt_u(k), fmt_u(binom_mod(n, static_cast<std::int64_t>(k), p, s))});
    return kOk;
}

int cmd_density(Context& ctx, std::size_t a, const std::vector<std::uint64_t>& Ns, std::optional<std::uint32_t> p_flag) {
    const auto [p, s] = ctx.prime_power(p_flag, std::nullopt);
    (void)s;
    CsvWriter csv(ctx.out(), {"N", "a", "p", "density"});
    for (const auto N : Ns) csv.row({fmt_u(N), fmt_u(a), fmt_u(p), format_real(m0_density(N, a, p))});
    return kOk;
}

IndexInterval parse_interval(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("--force expects lo:hi");
    try {
        std::size_t used_lo = 0;
        std::size_t used_hi = 0;
        const std::string lo = text.substr(0, colon);
        const std::string hi = text.substr(colon + 1);
        IndexInterval iv{std::stoull(lo, &used_lo), std::stoull(hi, &used_hi)};
        if (used_lo != lo.size() || used_hi != hi.size() || iv.lo > iv.hi) throw UsageError("");
        return iv;
    } catch (const std::exception&) {
        throw UsageError("--force expects lo:hi with lo <= hi");
    }
}

int cmd_sample(Context& ctx, std::size_t len, const std::string& force, std::uint64_t stream) {
    const MarkovMeasure mu = build_measure(ctx.config("sample"));
    const RegenSampler sampler = build_regen(mu, ctx.alpha());
    SampleOptions opts;
    opts.stream = stream;
    if (!force.empty()) opts.forced_ones = parse_interval(force);
    const PathTrace path = sampler.sample_path(len, ctx.seed(), opts);
    const GroupSpec& spec = mu.shift().spec();
    CsvWriter csv(ctx.out(), {"n", "x", "u", "w", "v"});
    csv.row({"-1", format_symbol(spec, path.start), "", "", ""});
    for (std::size_t i = 0; i < len; ++i)
        csv.row({fmt_u(i), format_symbol(spec, path.x[i]), fmt_u(path.u[i]), format_symbol(spec, path.w[i]),
                 format_real(path.v[i])});
    return kOk;
}

class Params {
public:
    explicit Params(const std::string& text) {
        std::string norm = text;
        for (char& c : norm)
            if (c == ',' || c == ';') c = ' ';
        std::istringstream in(norm);
        for (std::string tok; in >> tok;) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0) throw UsageError("--params expects key=value pairs, got '" + tok + "'");
            values_[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }

    std::uint64_t u(const std::string& key, std::uint64_t fallback) {
        const auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        used_.push_back(key);
        try {
            std::size_t used = 0;
            const auto v = std::stoull(it->second, &used);
            if (used != it->second.size() || it->second.front() == '-') throw UsageError("");
            return v;
        } catch (const std::exception&) {
            throw UsageError("parameter " + key + " must be a nonnegative integer");
        }
    }

    std::optional<std::uint64_t> opt(const std::string& key) {
        if (!values_.count(key)) return std::nullopt;
        return u(key, 0);
    }

    void finish() const {
        for (const auto& [k, v] : values_)
            if (std::find(used_.begin(), used_.end(), k) == used_.end()) throw UsageError("unknown parameter '" + k + "'");
    }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> used_;
};

void append_uniformity(std::vector<std::pair<std::string, std::string>>& rows, const UniformityReport& r) {
    rows.emplace_back("trials", fmt_u(r.trials));
    rows.emplace_back("length", fmt_u(r.length));
    rows.emplace_back("offset", fmt_u(r.offset));
    rows.emplace_back("gamma", format_real(r.gamma));
    rows.emplace_back("cells", fmt_u(r.cells));
    rows.emplace_back("max_deviation", format_real(r.max_deviation));
    rows.emplace_back("standard_error", format_real(r.standard_error));
    rows.emplace_back("max_z", format_real(r.max_z));
    rows.emplace_back("conditional_max_z", format_real(r.conditional_max_z));
    rows.emplace_back("off_support", format_real(r.off_support));
    rows.emplace_back("pass", fmt_bool(r.pass.value_or(false)));
}

int cmd_lemmas(Context& ctx, const std::string& which, const std::string& params_text,
               std::optional<std::uint32_t> p_flag, std::optional<std::uint32_t> s_flag) {
    Params params(params_text);
    std::vector<std::pair<std::string, std::string>> rows;
    bool pass = false;
    rows.emplace_back("check", which);
    if (which == "31" || which == "32") {
        const MarkovMeasure mu = build_measure(ctx.config("lemmas"));
        const RegenSampler sampler = build_regen(mu, ctx.alpha());
        const unsigned r = mu.shift().mixing_index();
        const std::size_t m = params.u("m", 1);
        const std::size_t trials = params.u("trials", 100000);
        UniformityReport rep;
        if (which == "31") {
            const std::size_t k = params.u("k", r);
            const bool two_sided = params.u("two_sided", 0) != 0;
            params.finish();
            rows.emplace_back("k", fmt_u(k));
            rows.emplace_back("m", fmt_u(m));
            rows.emplace_back("two_sided", fmt_bool(two_sided));
            rep = check_forced_block(sampler, k, m, trials, ctx.seed(), two_sided);
        } else {
            const std::uint64_t n = params.u("n", 0);
            const std::uint64_t k = params.u("k", 0);
            params.finish();
            rows.emplace_back("n", fmt_u(n));
            rows.emplace_back("k", fmt_u(k));
            rows.emplace_back("m", fmt_u(m));
            rep = check_isolated_block(sampler, n, k, m, trials, ctx.seed());
        }
        rows.emplace_back("alpha", format_real(sampler.alpha()));
        append_uniformity(rows, rep);
        pass = rep.pass.value_or(false);
    } else if (which == "34") {
        const auto [p, s] = ctx.prime_power(p_flag, s_flag);
        const std::uint64_t m = params.u("m", 1);
        const std::size_t a = params.u("a", isolation_min_a(m, p, s));
        const std::uint64_t n = params.u("n", 0);
        const std::size_t i = params.u("i", a);
        params.finish();
        const IsolationCount res = isolation_count_check(n, a, i, m, p, s);
        rows.emplace_back("p", fmt_u(p));
        rows.emplace_back("s", fmt_u(s));
        rows.emplace_back("n", fmt_u(n));
        rows.emplace_back("a", fmt_u(a));
        rows.emplace_back("i", fmt_u(i));
        rows.emplace_back("m", fmt_u(m));
        rows.emplace_back("isolated", fmt_u(res.count));
        rows.emplace_back("lower_bound", format_real(res.lower_bound));
        rows.emplace_back("pass", fmt_bool(res.ok));
        pass = res.ok;
    } else if (which == "haar") {
        const SubgroupShift shift = build_shift(ctx.config("lemmas"));
        const std::uint64_t n_max = params.u("n_max", 64);
        const unsigned m_max = static_cast<unsigned>(params.u("m_max", 3));
        params.finish();
        const HaarFixedReport rep = check_haar_fixed(shift, n_max, m_max, ctx.caps());
        rows.emplace_back("n_max", fmt_u(rep.n_max));
        rows.emplace_back("m_max", fmt_u(rep.m_max));
        rows.emplace_back("max_tv", format_real(rep.max_tv));
        rows.emplace_back("worst_n", fmt_u(rep.worst_n));
        rows.emplace_back("worst_m", fmt_u(rep.worst_m));
        rows.emplace_back("pass", fmt_bool(rep.pass));
        pass = rep.pass;
    } else {
        throw UsageError("--which must be 31, 32, 34 or haar");
    }
    write_report(ctx.out(), rows);
    return pass ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cesaro means of Markov measures under id + shift", "cesaro"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config_path, "experiment file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out_path, "write CSV here instead of stdout");
    app.add_option("--seed", g.seed, "random seed (overrides [params] seed)");
    app.add_option("--cap-work", g.cap_work, "work cap of the exact engine");
    app.add_option("--cap-enum", g.cap_enum, "cap on words held in one table");

    auto* verify = app.add_subcommand("verify", "validate the shift and measure; print r, |F| and gamma");

    unsigned ell = 0;
    auto* haar = app.add_subcommand("haar", "Haar marginal on words of length ell");
    haar->add_option("ell", ell)->required();

    std::uint64_t n = 0;
    unsigned m = 1;
    std::string engine = "exact";
    std::size_t trials = 20000;
    auto* marginal = app.add_subcommand("marginal", "law of (Phi^n x)_0^{m-1}");
    marginal->add_option("--n", n)->required();
    marginal->add_option("--m", m)->required();
    marginal->add_option("--engine", engine)->check(CLI::IsMember({"exact", "brute", "mc"}));
    marginal->add_option("--trials", trials);

    std::uint64_t N = 0;
    std::string subseq = "all";
    std::optional<std::size_t> decompose;
    auto* cesaro = app.add_subcommand("cesaro", "Cesaro scan of TV to Haar over a subsequence");
    cesaro->add_option("--N", N)->required();
    cesaro->add_option("--m", m)->required();
    cesaro->add_option("--subseq", subseq, "all | pa:<a> | m0:<a> | res:<j>,<a> | mj:<j>,<a>");
    cesaro->add_option("--engine", engine)->check(CLI::IsMember({"exact", "mc"}));
    cesaro->add_option("--trials", trials);
    cesaro->add_option("--decompose", decompose, "per-residue means mod p^a");

    std::uint64_t im = 0;
    std::optional<std::uint64_t> il;
    std::optional<std::uint32_t> p_flag;
    std::optional<std::uint32_t> s_flag;
    auto* isolated = app.add_subcommand("isolated", "(m,l)-isolated binomial coefficients of row n");
    isolated->add_option("--n", n)->required();
    isolated->add_option("--m", im)->required();
    isolated->add_option("--l", il);
    isolated->add_option("--p", p_flag);
    isolated->add_option("--s", s_flag);

    std::size_t a = 0;
    std::vector<std::uint64_t> Ns;
    auto* density = app.add_subcommand("density", "density of M_0(a) below N");
    density->add_option("--a", a)->required();
    density->add_option("--N", Ns)->required();
    density->add_option("--p", p_flag);

    std::size_t len = 0;
    std::string force;
    std::uint64_t stream = 0;
    auto* sample = app.add_subcommand("sample", "one regenerative path with its randomness");
    sample->add_option("--len", len)->required();
    sample->add_option("--force", force, "force U = 1 on lo:hi");
    sample->add_option("--stream", stream);

    std::string which;
    std::string params;
    auto* lemmas = app.add_subcommand("lemmas", "forced-block and isolated-block uniformity, isolation count, Haar fixed point");
    lemmas->add_option("--which", which, "31|forced, 32|isolated, 34|count, haar")
        ->required()
        ->transform(CLI::Transformer(std::map<std::string, std::string>{{"forced", "31"}, {"isolated", "32"}, {"count", "34"}}))
        ->check(CLI::IsMember({"31", "32", "34", "haar"}));
    lemmas->add_option("--params", params, "comma separated key=value");
    lemmas->add_option("--p", p_flag);
    lemmas->add_option("--s", s_flag);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n' << app.help();
        return kUsage;
    }

    try {
        Context ctx(g, out);
        if (*verify) return cmd_verify(ctx);
        if (*haar) return cmd_haar(ctx, ell);
        if (*marginal) return cmd_marginal(ctx, n, m, engine, trials);
        if (*cesaro) return cmd_cesaro(ctx, N, m, subseq, engine, trials, decompose);
        if (*isolated) return cmd_isolated(ctx, n, im, il, p_flag, s_flag);
        if (*density) return cmd_density(ctx, a, Ns, p_flag);
        if (*sample) return cmd_sample(ctx, len, force, stream);
        if (*lemmas) return cmd_lemmas(ctx, which, params, p_flag, s_flag);
        err << "usage: no command given\n";
        return kUsage;
    } catch (const UsageError& e) {
        err << "usage: " << e.what() << '\n';
        return kUsage;
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return kValidation;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return e.kind() == ErrorKind::resource ? kResource : kValidation;
    }
}

}  // namespace cesaro::cli
