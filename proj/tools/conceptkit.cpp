// Command-line front end for the concept-basis toolkit: dataset generation,
// basis construction, the four representation metrics, basis-aided
// intervention sweeps, the Monte Carlo bound checks, and Ward clustering.
//
// Exit codes: 0 success, 2 validation/usage error, 1 runtime error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conceptkit/basis.hpp"
#include "conceptkit/basis_io.hpp"
#include "conceptkit/clustering.hpp"
#include "conceptkit/cooccurrence.hpp"
#include "conceptkit/dataset.hpp"
#include "conceptkit/dataset_io.hpp"
#include "conceptkit/intervention.hpp"
#include "conceptkit/metrics.hpp"
#include "conceptkit/predictor.hpp"
#include "conceptkit/predictor_io.hpp"
#include "conceptkit/text.hpp"
#include "conceptkit/theorems.hpp"
#include "conceptkit/theorems_io.hpp"

namespace ck = conceptkit;

namespace {

std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    for (const auto& tok : ck::split_csv_line(s))
        if (!tok.empty()) out.push_back(ck::parse_double(tok, what));
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::vector<ck::PairCorrelation> parse_pair_correlations(const std::string& s) {
    // "a:b:rho,a:b:rho,..."
    std::vector<ck::PairCorrelation> out;
    for (const auto& tok : ck::split_csv_line(s)) {
        if (tok.empty()) continue;
        ck::PairCorrelation pc;
        if (std::sscanf(tok.c_str(), "%d:%d:%lf", &pc.a, &pc.b, &pc.rho) != 3)
            throw std::invalid_argument("--pairs entry '" + tok + "' is not a:b:rho");
        out.push_back(pc);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairing(const std::string& s,
                                                               const ck::ConceptBasis& b) {
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
    if (s == "auto") {
        // match names of the form <stem>_<tag> across exactly two stems
        std::map<std::string, std::map<std::string, std::size_t>> stems;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const auto& name = b.names[j];
            const auto pos = name.find('_');
            if (pos == std::string::npos)
                throw std::invalid_argument("--pairing auto: concept '" + name + "' has no <stem>_<tag> form");
            stems[name.substr(0, pos)][name.substr(pos + 1)] = j;
        }
        if (stems.size() != 2)
            throw std::invalid_argument("--pairing auto: expected exactly two name stems");
        const auto& first = stems.begin()->second;
        const auto& second = std::next(stems.begin())->second;
        if (first.size() != second.size())
            throw std::invalid_argument("--pairing auto: stems have different tag sets");
        for (const auto& [tag, idx] : first) {
            auto it = second.find(tag);
            if (it == second.end())
                throw std::invalid_argument("--pairing auto: tag '" + tag + "' missing from one stem");
            pairing.emplace_back(idx, it->second);
        }
        return pairing;
    }
    for (const auto& tok : ck::split_csv_line(s)) {
        if (tok.empty()) continue;
        int a = 0, c = 0;
        if (std::sscanf(tok.c_str(), "%d:%d", &a, &c) != 2 || a < 1 || c < 1)
            throw std::invalid_argument("--pairing entry '" + tok + "' is not a:b (1-based)");
        pairing.emplace_back(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(c - 1));
    }
    return pairing;
}

// --config FILE provides defaults as nested JSON keyed by subcommand names;
// anything given explicitly on the command line wins.
std::vector<std::string> apply_config_defaults(std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") config_path = args[i + 1];
    if (config_path.empty()) return args;

    auto doc = nlohmann::json::parse(ck::read_text_file(config_path));
    std::set<std::string> given;
    for (const auto& a : args)
        if (a.rfind("--", 0) == 0) given.insert(a.substr(0, a.find('=')));

    // walk into the json following the subcommand words on the command line
    nlohmann::json node = doc;
    std::vector<nlohmann::json> scopes{node};
    for (const auto& a : args) {
        if (a.rfind("--", 0) == 0) continue;
        if (node.is_object() && node.contains(a) && node[a].is_object()) {
            node = node[a];
            scopes.push_back(node);
        }
    }
    for (const auto& scope : scopes) {
        for (const auto& [key, value] : scope.items()) {
            if (value.is_object()) continue;
            const std::string flag = "--" + key;
            if (given.count(flag)) continue;
            given.insert(flag);
            args.push_back(flag);
            args.push_back(value.is_string() ? value.get<std::string>()
                                             : nlohmann::json(value).dump());
        }
    }
    return args;
}

struct TrainFlags {
    std::size_t g_epochs = 60;
    double g_lr = 2.0;
    std::size_t f_epochs = 150;
    double f_lr = 1.0;
};

void add_train_flags(CLI::App* cmd, TrainFlags& tf) {
    cmd->add_option("--g-epochs", tf.g_epochs, "concept predictor training epochs");
    cmd->add_option("--g-lr", tf.g_lr, "concept predictor learning rate");
    cmd->add_option("--f-epochs", tf.f_epochs, "label predictor training epochs");
    cmd->add_option("--f-lr", tf.f_lr, "label predictor learning rate");
}

ck::BasisBuilder make_builder(const std::string& spec, const ck::SkipgramConfig& cfg) {
    if (spec == "label")
        return [](const ck::ConceptDataset& d, std::uint64_t) { return ck::label_basis(d); };
    if (spec == "c2v")
        return [cfg](const ck::ConceptDataset& d, std::uint64_t seed) {
            ck::SkipgramConfig c = cfg;
            c.seed = seed;
            return ck::concept2vec(d, c);
        };
    if (spec.rfind("import:", 0) == 0) {
        auto basis = ck::import_basis(spec.substr(7));
        return [basis](const ck::ConceptDataset&, std::uint64_t) { return basis; };
    }
    throw std::invalid_argument("unknown builder '" + spec + "' (label, c2v, import:FILE)");
}

ck::LabelPredictor train_f(const ck::ConceptDataset& d, const ck::ConceptPredictor& g,
                           const std::string& bottleneck, const TrainFlags& tf, std::uint64_t seed) {
    if (bottleneck == "independent")
        return ck::train_label_predictor(d, tf.f_epochs, tf.f_lr, seed).predictor;
    if (bottleneck == "sequential") {
        // f learns from the concept predictor's own (binarized) outputs
        ck::Matrix pc(d.n(), d.num_concepts());
        for (std::size_t i = 0; i < d.n(); ++i) {
            const auto probs = g.predict_probs(d.features.row(i));
            for (std::size_t j = 0; j < d.num_concepts(); ++j) pc(i, j) = probs[j] >= 0.5 ? 1.0 : 0.0;
        }
        return ck::train_label_predictor(pc, d.labels, static_cast<std::size_t>(d.num_labels()),
                                         tf.f_epochs, tf.f_lr, seed)
            .predictor;
    }
    throw std::invalid_argument("unknown bottleneck '" + bottleneck + "' (independent, sequential)");
}

int run(std::vector<std::string> args) {
    CLI::App app{"concept-basis analysis toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string out_path = "out";
    std::string config_path;
    app.add_option("--seed", seed, "global random seed");
    app.add_option("--out", out_path, "output file or directory");
    app.add_option("--config", config_path, "JSON config file with flag defaults");

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a dataset directory")->fallthrough();
    gen->require_subcommand(1);

    auto* gen_pairs = gen->add_subcommand("pairs", "one-hot digit/colour pairs")->fallthrough();
    std::size_t digits = 10, nsamples = 2000;
    double rate = 1.0, noise = 0.1;
    gen_pairs->add_option("--digits", digits, "number of digit concepts");
    gen_pairs->add_option("--n", nsamples, "sample count");
    gen_pairs->add_option("--rate", rate, "digit/colour correlation rate");
    gen_pairs->add_option("--noise", noise, "feature noise std");

    auto* gen_weak = gen->add_subcommand("weak", "weakly correlated binary attributes")->fallthrough();
    std::size_t weak_k = 4;
    std::string weak_pairs;
    gen_weak->add_option("--k", weak_k, "concept count (<= 20)");
    gen_weak->add_option("--n", nsamples, "sample count");
    gen_weak->add_option("--pairs", weak_pairs, "pair correlations a:b:rho,...");

    auto* gen_mix = gen->add_subcommand("mixture", "two-task threshold mixture scenario")->fallthrough();
    gen_mix->add_option("--n", nsamples, "sample count");

    auto* gen_prof = gen->add_subcommand("profiles", "sample a profile distribution")->fallthrough();
    std::string profile_file;
    gen_prof->add_option("--file", profile_file, "profile distribution JSON")->required();
    gen_prof->add_option("--n", nsamples, "sample count");

    // ---- basis ----
    auto* basis = app.add_subcommand("basis", "build or validate a concept basis")->fallthrough();
    basis->require_subcommand(1);
    std::string data_dir;
    ck::SkipgramConfig sgcfg;

    auto* basis_label = basis->add_subcommand("label", "label basis from concept columns")->fallthrough();
    basis_label->add_option("--data", data_dir, "dataset directory")->required();

    auto* basis_c2v = basis->add_subcommand("c2v", "skipgram co-occurrence embeddings")->fallthrough();
    basis_c2v->add_option("--data", data_dir, "dataset directory")->required();
    basis_c2v->add_option("--dim", sgcfg.embed_dim, "embedding dimension");
    basis_c2v->add_option("--epochs", sgcfg.epochs, "training epochs");
    basis_c2v->add_option("--lr", sgcfg.learning_rate, "learning rate");
    basis_c2v->add_option("--neg", sgcfg.negatives_per_positive, "negatives per positive");

    auto* basis_import = basis->add_subcommand("import", "validate an external basis file")->fallthrough();
    std::string import_file;
    basis_import->add_option("--file", import_file, "basis JSON file")->required();

    // ---- metrics ----
    auto* metrics = app.add_subcommand("metrics", "representation metrics to CSV")->fallthrough();
    std::string builder_spec = "label", which = "stability,robustness,responsiveness,faithfulness";
    std::string delta_v = "euclidean", pairing_spec = "auto";
    std::size_t t = 3, seed_count = 5;
    double flip = 0.01, noise_std = -1.0;
    TrainFlags mtf;
    metrics->add_option("--data", data_dir, "dataset directory")->required();
    metrics->add_option("--builder", builder_spec, "label | c2v | import:FILE");
    metrics->add_option("--which", which, "comma list of metrics");
    metrics->add_option("--t", t, "neighbourhood size");
    metrics->add_option("--delta-v", delta_v, "euclidean | manhattan | cosine");
    metrics->add_option("--flip", flip, "robustness concept flip probability");
    metrics->add_option("--noise-std", noise_std, "robustness feature noise std (default: range-scaled)");
    metrics->add_option("--seeds", seed_count, "number of seeds");
    metrics->add_option("--pairing", pairing_spec, "agreement pairing: auto or a:b,... (1-based)");
    metrics->add_option("--dim", sgcfg.embed_dim, "c2v embedding dimension");
    metrics->add_option("--epochs", sgcfg.epochs, "c2v training epochs");
    metrics->add_option("--lr", sgcfg.learning_rate, "c2v learning rate");
    metrics->add_option("--neg", sgcfg.negatives_per_positive, "c2v negatives per positive");
    add_train_flags(metrics, mtf);

    // ---- intervene ----
    auto* intervene = app.add_subcommand("intervene", "intervention experiments to CSV")->fallthrough();
    intervene->require_subcommand(1);
    std::string policy_list = "basis_hard,predictor_only", basis_spec = "label";
    std::string fractions_spec = "0.2,0.4,0.6,0.8,1.0", bottleneck = "independent";
    std::size_t q = 10;
    bool group_mode = false;
    TrainFlags itf;

    auto* iv_sweep = intervene->add_subcommand("sweep", "accuracy vs intervened fraction")->fallthrough();
    iv_sweep->add_option("--data", data_dir, "dataset directory")->required();
    iv_sweep->add_option("--basis", basis_spec, "label | c2v | import:FILE");
    iv_sweep->add_option("--policy", policy_list, "comma list of policies");
    iv_sweep->add_option("--q", q, "neighbours per imputation");
    iv_sweep->add_option("--fractions", fractions_spec, "comma list of fractions");
    iv_sweep->add_flag("--groups", group_mode, "intervene on whole concept groups");
    iv_sweep->add_option("--bottleneck", bottleneck, "independent | sequential");
    iv_sweep->add_option("--seeds", seed_count, "number of seeds");
    add_train_flags(iv_sweep, itf);

    auto* iv_corr = intervene->add_subcommand("correlation", "accuracy vs concept correlation rate")->fallthrough();
    std::string rates_spec = "0,0.25,0.5,0.75,1.0";
    ck::CorrelationSweepParams cparams;
    iv_corr->add_option("--rates", rates_spec, "comma list of correlation rates");
    iv_corr->add_option("--digits", cparams.n_digits, "number of digit concepts");
    iv_corr->add_option("--n", cparams.n_samples, "sample count");
    iv_corr->add_option("--noise", cparams.feature_noise, "feature noise std");
    iv_corr->add_option("--q", q, "neighbours per imputation");
    iv_corr->add_option("--fraction", cparams.intervened_fraction, "intervened fraction");
    iv_corr->add_option("--seeds", seed_count, "number of seeds");
    iv_corr->add_option("--g-epochs", cparams.concept_epochs, "concept predictor epochs");
    iv_corr->add_option("--g-lr", cparams.concept_lr, "concept predictor learning rate");
    iv_corr->add_option("--f-epochs", cparams.label_epochs, "label predictor epochs");
    iv_corr->add_option("--f-lr", cparams.label_lr, "label predictor learning rate");

    // ---- theory ----
    auto* theory = app.add_subcommand("theory", "Monte Carlo checks of the analytic bounds")->fallthrough();
    theory->require_subcommand(1);
    double eps = 0.2, delta = 0.1;
    std::size_t trials = 500, n_override = 0, random_k = 0;
    std::string intervened_spec;

    auto* th_conv = theory->add_subcommand("convergence", "co-occurrence estimator concentration")->fallthrough();
    th_conv->add_option("--profiles", profile_file, "profile distribution JSON (default: built-in two-profile)");
    th_conv->add_option("--eps", eps, "max-entry deviation");
    th_conv->add_option("--delta", delta, "failure probability budget");
    th_conv->add_option("--trials", trials, "Monte Carlo trials");
    th_conv->add_option("--n", n_override, "sample-size override (default: the analytic threshold)");

    auto* th_regret = theory->add_subcommand("regret", "noisy-argmax regret bound")->fallthrough();
    th_regret->add_option("--profiles", profile_file, "profile distribution JSON giving the exact matrix");
    th_regret->add_option("--random-k", random_k, "use a random k x k matrix instead");
    th_regret->add_option("--intervened", intervened_spec, "1-based intervened indices a,b,...")->required();
    th_regret->add_option("--eps", eps, "noise std");
    th_regret->add_option("--trials", trials, "Monte Carlo trials");

    // ---- cluster ----
    auto* cluster = app.add_subcommand("cluster", "Ward dendrogram of a basis")->fallthrough();
    std::string cluster_basis;
    cluster->add_option("--basis", cluster_basis, "basis JSON file")->required();

    try {
        args = apply_config_defaults(std::move(args));
        // CLI11 parses back-to-front
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (gen_pairs->parsed()) {
        ck::save_dataset(ck::gen_correlated_pairs(digits, nsamples, rate, noise, seed), out_path);
        std::cout << "wrote dataset to " << out_path << "\n";
        return 0;
    }
    if (gen_weak->parsed()) {
        ck::save_dataset(
            ck::gen_weak_correlation(weak_k, nsamples, parse_pair_correlations(weak_pairs), seed),
            out_path);
        std::cout << "wrote dataset to " << out_path << "\n";
        return 0;
    }
    if (gen_mix->parsed()) {
        ck::save_dataset(ck::gen_threshold_mixture(nsamples, seed), out_path);
        std::cout << "wrote dataset to " << out_path << "\n";
        return 0;
    }
    if (gen_prof->parsed()) {
        ck::save_dataset(ck::sample_profiles(ck::load_profiles(profile_file), nsamples, seed), out_path);
        std::cout << "wrote dataset to " << out_path << "\n";
        return 0;
    }

    if (basis_label->parsed()) {
        ck::export_basis(ck::label_basis(ck::load_dataset_dir(data_dir)), out_path);
        std::cout << "wrote basis to " << out_path << "\n";
        return 0;
    }
    if (basis_c2v->parsed()) {
        sgcfg.seed = seed;
        ck::export_basis(ck::concept2vec(ck::load_dataset_dir(data_dir), sgcfg), out_path);
        std::cout << "wrote basis to " << out_path << "\n";
        return 0;
    }
    if (basis_import->parsed()) {
        const auto b = ck::import_basis(import_file);
        std::cout << "valid basis: " << b.size() << " concepts, dim " << b.dim() << "\n";
        if (!out_path.empty() && out_path != "out") ck::export_basis(b, out_path);
        return 0;
    }

    if (metrics->parsed()) {
        const auto d = ck::load_dataset_dir(data_dir);
        const auto metric = ck::metric_from_name(delta_v);
        const auto builder = make_builder(builder_spec, sgcfg);
        const std::string dataset_name = std::filesystem::path(data_dir).filename().string();
        std::vector<std::uint64_t> seeds;
        for (std::size_t i = 0; i < seed_count; ++i) seeds.push_back(ck::derive_seed(seed, 100 + i));

        std::vector<ck::MetricReportRow> rows;
        auto add_row = [&](const std::string& name, const std::vector<double>& values) {
            ck::MetricReportRow row;
            row.metric = name;
            row.basis_name = builder_spec;
            row.dataset = dataset_name;
            row.t = t;
            row.delta_v = metric;
            double mean = 0;
            for (double v : values) mean += v;
            mean /= static_cast<double>(values.size());
            double var = 0;
            for (double v : values) var += (v - mean) * (v - mean);
            row.value = mean;
            row.stderr_ = values.size() > 1
                              ? std::sqrt(var / static_cast<double>(values.size() - 1) /
                                          static_cast<double>(values.size()))
                              : 0.0;
            row.seed_count = values.size();
            rows.push_back(row);
        };

        for (const auto& name : ck::split_csv_line(which)) {
            if (name == "stability") {
                std::vector<double> pair_distances;
                const double value = ck::stability(builder, d, seeds, metric, t, &pair_distances);
                ck::MetricReportRow row;
                row.metric = "stability";
                row.basis_name = builder_spec;
                row.dataset = dataset_name;
                row.t = t;
                row.delta_v = metric;
                row.value = value;
                double mean = 0;
                for (double v : pair_distances) mean += v;
                mean /= static_cast<double>(pair_distances.size());
                double var = 0;
                for (double v : pair_distances) var += (v - mean) * (v - mean);
                row.stderr_ = pair_distances.size() > 1
                                  ? std::sqrt(var / static_cast<double>(pair_distances.size() - 1) /
                                              static_cast<double>(pair_distances.size()))
                                  : 0.0;
                row.seed_count = seeds.size();
                rows.push_back(row);
            } else if (name == "robustness") {
                std::vector<double> vals;
                for (auto s : seeds)
                    vals.push_back(ck::robustness(builder, d, {flip, noise_std}, metric, t, s));
                add_row("robustness", vals);
            } else if (name == "responsiveness") {
                std::vector<double> vals;
                for (auto s : seeds) vals.push_back(ck::responsiveness(builder, d, metric, t, s));
                add_row("responsiveness", vals);
            } else if (name == "faithfulness") {
                std::vector<double> vals;
                for (auto s : seeds) {
                    const auto g = ck::train_concept_predictor(d, mtf.g_epochs, mtf.g_lr, s).predictor;
                    const auto f = ck::train_label_predictor(d, mtf.f_epochs, mtf.f_lr, s).predictor;
                    const auto imp = ck::importance_vectors(g, f, d);
                    for (std::size_t dj : imp.degenerate)
                        std::cerr << "warning: concept '" << d.concept_names[dj]
                                  << "' is always or never active; one-sided importance sum\n";
                    vals.push_back(ck::faithfulness(builder(d, s), imp, metric, t));
                }
                add_row("faithfulness", vals);
            } else if (name == "agreement") {
                std::vector<double> vals;
                for (auto s : seeds) {
                    const auto b = builder(d, s);
                    vals.push_back(ck::concept_agreement(b, parse_pairing(pairing_spec, b), metric));
                }
                add_row("agreement", vals);
            } else {
                throw std::invalid_argument("unknown metric '" + name + "'");
            }
        }
        ck::write_text_file(out_path, ck::metric_report_csv(rows));
        std::cout << "wrote metrics to " << out_path << "\n";
        return 0;
    }

    if (iv_sweep->parsed()) {
        const auto d = ck::load_dataset_dir(data_dir);
        const auto fractions = parse_double_list(fractions_spec, "--fractions");
        const auto basis_builder = make_builder(basis_spec, sgcfg);
        std::vector<std::uint64_t> seeds;
        for (std::size_t i = 0; i < seed_count; ++i) seeds.push_back(ck::derive_seed(seed, 200 + i));

        ck::InterventionOutcome all;
        for (auto s : seeds) {
            const auto g = ck::train_concept_predictor(d, itf.g_epochs, itf.g_lr, s).predictor;
            const auto f = train_f(d, g, bottleneck, itf, s);
            const auto b = basis_builder(d, s);
            for (const auto& pol_name : ck::split_csv_line(policy_list)) {
                ck::InterventionPolicy pol;
                pol.mode = ck::mode_from_name(pol_name);
                pol.q = q;
                pol.delta_v = pol.mode == ck::InterventionMode::basis_weighted
                                  ? ck::VectorMetric::cosine_distance
                                  : ck::VectorMetric::euclidean;
                auto out = ck::intervention_sweep(f, g, b, d, fractions, pol, group_mode, {s},
                                                  basis_spec);
                all.rows.insert(all.rows.end(), out.rows.begin(), out.rows.end());
            }
        }
        ck::write_text_file(out_path, ck::intervention_outcome_csv(all));
        std::cout << "wrote outcome to " << out_path << "\n";
        return 0;
    }

    if (iv_corr->parsed()) {
        ck::InterventionPolicy pol;
        pol.mode = ck::InterventionMode::basis_hard;
        pol.q = q;
        std::vector<std::uint64_t> seeds;
        for (std::size_t i = 0; i < seed_count; ++i) seeds.push_back(ck::derive_seed(seed, 300 + i));
        const auto out = ck::correlation_sweep(parse_double_list(rates_spec, "--rates"), cparams, pol, seeds);
        ck::write_text_file(out_path, ck::intervention_outcome_csv(out));
        std::cout << "wrote outcome to " << out_path << "\n";
        return 0;
    }

    if (th_conv->parsed() || th_regret->parsed()) {
        ck::ProfileDistribution p;
        if (!profile_file.empty())
            p = ck::load_profiles(profile_file);
        else
            p.profiles = {{{1, 1}, 0.5}, {{1, 0}, 0.5}};

        ck::TheoremReport report;
        if (th_conv->parsed()) {
            report = ck::verify_cooccurrence_convergence(p, eps, delta, trials, seed, n_override);
        } else {
            ck::CooccurrenceMatrix m;
            if (random_k > 0) {
                m.m = ck::Matrix(random_k, random_k);
                auto eng = ck::make_engine(ck::derive_seed(seed, 0x6d617472));
                std::uniform_real_distribution<double> unif(0.0, 1.0);
                for (std::size_t i = 0; i < random_k; ++i)
                    for (std::size_t j = 0; j < random_k; ++j) m.m(i, j) = i == j ? 1.0 : unif(eng);
            } else {
                m = ck::exact_cooccurrence(p);
            }
            std::set<std::size_t> intervened;
            for (const auto& tok : ck::split_csv_line(intervened_spec)) {
                if (tok.empty()) continue;
                const int idx = std::stoi(tok);
                if (idx < 1 || static_cast<std::size_t>(idx) > m.size())
                    throw std::invalid_argument("--intervened index " + tok + " out of range");
                intervened.insert(static_cast<std::size_t>(idx - 1));
            }
            report = ck::verify_argmax_regret(m, intervened, eps, trials, seed);
        }
        std::cout << report.summary() << "\n";
        if (!out_path.empty() && out_path != "out") ck::save_theorem_report(report, out_path);
        return report.pass ? 0 : 1;
    }

    if (cluster->parsed()) {
        ck::export_dendrogram(ck::ward_cluster(ck::import_basis(cluster_basis)), out_path);
        std::cout << "wrote dendrogram to " << out_path << "\n";
        return 0;
    }

    std::cerr << "usage error: no subcommand\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run(std::move(args));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
