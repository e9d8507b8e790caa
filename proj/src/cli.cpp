#include "evomlp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "evomlp/codegen.hpp"
#include "evomlp/format.hpp"
#include "evomlp/synthetic.hpp"

namespace evomlp::cli {

using json = nlohmann::ordered_json;

namespace {

json defaults() {
    return json::parse(R"({
  "algorithm": "de",
  "label_column": "label",
  "population_size": 50,
  "seed": 1,
  "workers": 0,
  "init_range": [-1.0, 1.0],
  "topology": {"hidden_layers": [4], "activation": "tanh"},
  "stopping": {"statistic": "best", "threshold": 1.0, "max_iterations": 200},
  "preprocess": {"missing": "drop_row", "transform": "none"},
  "pso": {"phi_p": 2.0, "phi_g": 2.0, "inertia": "linear", "w": 0.729, "w0": 0.9, "wT": 0.5},
  "de": {"strategy": "rand1", "f": 0.8, "cr": 0.9},
  "ga": {"selection": "tournament", "mutation": "substitution", "cr": 0.5, "p_m": 0.01, "literal_roulette": false},
  "trace": null
})");
}

void merge(json& base, const json& user, const std::string& prefix, std::vector<std::string>& problems) {
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!base.contains(it.key())) {
            problems.push_back("unknown config key '" + key + "'");
            continue;
        }
        json& slot = base[it.key()];
        if (slot.is_object() && it.value().is_object())
            merge(slot, it.value(), key, problems);
        else if (slot.is_object())
            problems.push_back("config key '" + key + "' must be an object");
        else
            slot = it.value();
    }
}

void apply_override(json& doc, const std::string& assignment, std::vector<std::string>& problems) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        problems.push_back("override '" + assignment + "' is not of the form key=value");
        return;
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json* slot = &doc;
    std::stringstream parts(key);
    std::string part;
    while (std::getline(parts, part, '.')) {
        if (!slot->is_object() || !slot->contains(part)) {
            problems.push_back("unknown config key '" + key + "'");
            return;
        }
        slot = &(*slot)[part];
    }
    if (slot->is_object()) {
        problems.push_back("config key '" + key + "' is a section, set one of its fields instead");
        return;
    }
    json value = json::parse(text, nullptr, false);
    *slot = value.is_discarded() ? json(text) : value;
}

// Typed field readers; a failure is recorded and the default kept.
class Reader {
public:
    Reader(const json& doc, std::vector<std::string>& problems) : doc_(doc), problems_(problems) {}

    const json& at(const std::string& path) const {
        const json* j = &doc_;
        std::stringstream parts(path);
        std::string part;
        while (std::getline(parts, part, '.'))
            j = &j->at(part);
        return *j;
    }

    void real(const std::string& path, double& out) {
        const auto& j = at(path);
        if (j.is_number())
            out = j.get<double>();
        else
            fail(path, "a number");
    }

    void count(const std::string& path, std::size_t& out) {
        const auto& j = at(path);
        if (j.is_number_unsigned())
            out = j.get<std::size_t>();
        else
            fail(path, "a nonnegative integer");
    }

    void seed(const std::string& path, std::uint64_t& out) {
        const auto& j = at(path);
        if (j.is_number_unsigned())
            out = j.get<std::uint64_t>();
        else
            fail(path, "a nonnegative 64-bit integer");
    }

    void flag(const std::string& path, bool& out) {
        const auto& j = at(path);
        if (j.is_boolean())
            out = j.get<bool>();
        else
            fail(path, "true or false");
    }

    void text(const std::string& path, std::string& out) {
        const auto& j = at(path);
        if (j.is_string())
            out = j.get<std::string>();
        else
            fail(path, "a string");
    }

    template <typename Enum, typename Parse>
    void choice(const std::string& path, Enum& out, Parse parse) {
        std::string name;
        const auto before = problems_.size();
        text(path, name);
        if (problems_.size() != before)
            return;
        try {
            out = parse(name);
        } catch (const ValidationError& e) {
            problems_.push_back("config key '" + path + "': " + e.what());
        }
    }

private:
    void fail(const std::string& path, const char* expected) {
        problems_.push_back("config key '" + path + "' must be " + std::string(expected) + " (got " + at(path).dump() +
                            ")");
    }

    const json& doc_;
    std::vector<std::string>& problems_;
};

}  // namespace

RunConfig CliConfig::run_config(std::size_t input_dim, std::size_t output_dim) const {
    RunConfig rc;
    if (algorithm == "pso")
        rc.algorithm = pso;
    else if (algorithm == "ga")
        rc.algorithm = ga;
    else
        rc.algorithm = de;
    rc.topology = Topology{input_dim, hidden_layers, output_dim, activation};
    rc.population_size = population_size;
    rc.stopping = stopping;
    rc.seed = seed;
    rc.workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    rc.init_range = init_range;
    return rc;
}

std::string default_config_json() { return defaults().dump(2) + "\n"; }

CliConfig parse_config(std::string_view json_text, const std::vector<std::string>& overrides) {
    std::vector<std::string> problems;
    json doc = defaults();
    if (!json_text.empty()) {
        json user = json::parse(json_text, nullptr, false);
        if (user.is_discarded())
            throw ValidationError("config file is not valid JSON");
        if (!user.is_object())
            throw ValidationError("config file must hold a JSON object");
        merge(doc, user, "", problems);
    }
    for (const auto& o : overrides)
        apply_override(doc, o, problems);

    CliConfig c;
    Reader r(doc, problems);
    r.text("algorithm", c.algorithm);
    if (c.algorithm != "pso" && c.algorithm != "de" && c.algorithm != "ga")
        problems.push_back("config key 'algorithm' must be one of pso, de, ga (got '" + c.algorithm + "')");
    r.text("label_column", c.label_column);
    r.count("population_size", c.population_size);
    r.seed("seed", c.seed);
    r.count("workers", c.workers);

    const auto& range = r.at("init_range");
    if (range.is_array() && range.size() == 2 && range[0].is_number() && range[1].is_number()) {
        c.init_range = {range[0].get<double>(), range[1].get<double>()};
    } else {
        problems.push_back("config key 'init_range' must be [low, high] (got " + range.dump() + ")");
    }

    const auto& hidden = r.at("topology.hidden_layers");
    bool hidden_ok = hidden.is_array();
    for (const auto& h : hidden)
        hidden_ok = hidden_ok && h.is_number_unsigned();
    if (hidden_ok)
        c.hidden_layers = hidden.get<std::vector<std::size_t>>();
    else
        problems.push_back("config key 'topology.hidden_layers' must be a list of positive integers (got " +
                           hidden.dump() + ")");
    r.choice("topology.activation", c.activation, parse_activation);

    r.choice("stopping.statistic", c.stopping.statistic, parse_stop_statistic);
    r.real("stopping.threshold", c.stopping.threshold);
    r.count("stopping.max_iterations", c.stopping.max_iterations);

    r.choice("preprocess.missing", c.preprocess.missing, parse_missing_policy);
    r.choice("preprocess.transform", c.preprocess.transform, parse_transform_kind);

    r.real("pso.phi_p", c.pso.phi_p);
    r.real("pso.phi_g", c.pso.phi_g);
    std::string inertia = "linear";
    double w = 0.729, w0 = 0.9, wT = 0.5;
    r.text("pso.inertia", inertia);
    r.real("pso.w", w);
    r.real("pso.w0", w0);
    r.real("pso.wT", wT);
    if (inertia == "constant")
        c.pso.inertia = pso::ConstantInertia{w};
    else if (inertia == "linear")
        c.pso.inertia = pso::LinearInertia{w0, wT};
    else if (inertia == "nonlinear")
        c.pso.inertia = pso::NonlinearInertia{w0, wT};
    else
        problems.push_back("config key 'pso.inertia' must be constant, linear or nonlinear (got '" + inertia + "')");

    r.choice("de.strategy", c.de.strategy, de::parse_strategy);
    r.real("de.f", c.de.f_scale);
    r.real("de.cr", c.de.cr);

    r.choice("ga.selection", c.ga.selection, ga::parse_selection);
    r.choice("ga.mutation", c.ga.mutation, ga::parse_mutation);
    r.real("ga.cr", c.ga.cr);
    r.real("ga.p_m", c.ga.p_m);
    r.flag("ga.literal_roulette", c.ga.literal_roulette);

    const auto& trace = r.at("trace");
    if (trace.is_string())
        c.trace = trace.get<std::string>();
    else if (!trace.is_null())
        problems.push_back("config key 'trace' must be a path string or null");

    // Bounds: the selected algorithm through RunConfig, the others directly.
    auto bounds = c.run_config(1, 2).check();
    problems.insert(problems.end(), bounds.begin(), bounds.end());
    if (c.algorithm != "pso")
        for (auto& p : c.pso.check())
            problems.push_back(std::move(p));
    if (c.algorithm != "de")
        for (auto& p : c.de.check())
            problems.push_back(std::move(p));
    if (c.algorithm != "ga")
        for (auto& p : c.ga.check())
            problems.push_back(std::move(p));

    if (!problems.empty())
        throw ValidationError(std::move(problems));
    return c;
}

namespace {

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::string> trace;
    bool literal_roulette = false;
    bool quiet = false;
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void report(std::ostream& err, const Error& e) {
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        for (const auto& p : v->problems())
            err << "error: " << p << "\n";
    } else {
        err << "error: " << e.what() << "\n";
    }
}

void write_history(const std::filesystem::path& path, const std::vector<GenerationStats>& history) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open history file '" + path.string() + "'");
    out << "generation,best,worst,mean\n";
    for (const auto& h : history)
        out << h.generation << ',' << format_real(h.best) << ',' << format_real(h.worst) << ','
            << format_real(h.mean) << '\n';
    if (!out)
        throw IoError("write to history file '" + path.string() + "' failed");
}

int cmd_train(const std::string& config_path, const std::string& data_path, const std::string& out_dir,
              const std::vector<std::string>& overrides, const GlobalOptions& global, std::ostream& out,
              std::ostream& err) {
    std::vector<std::string> problems;
    auto collect = [&](auto&& fn) {
        try {
            fn();
        } catch (const ValidationError& e) {
            problems.insert(problems.end(), e.problems().begin(), e.problems().end());
        } catch (const IoError& e) {
            problems.emplace_back(e.what());
        }
    };

    std::vector<std::string> all_overrides = overrides;
    if (global.seed)
        all_overrides.push_back("seed=" + std::to_string(*global.seed));
    if (global.workers)
        all_overrides.push_back("workers=" + std::to_string(*global.workers));
    if (global.literal_roulette)
        all_overrides.push_back("ga.literal_roulette=true");

    CliConfig config;
    collect([&] {
        const std::string text = config_path.empty() ? std::string() : read_file(config_path);
        config = parse_config(text, all_overrides);
    });
    if (global.trace)
        config.trace = *global.trace;

    std::optional<Dataset> dataset;
    collect([&] { dataset = preprocess(load_csv(data_path, config.label_column), config.preprocess); });

    if (!problems.empty()) {
        for (const auto& p : problems)
            err << "error: " << p << "\n";
        return kExitValidation;
    }

    const RunConfig rc = config.run_config(dataset->dim(), dataset->num_classes());
    try {
        rc.validate();
    } catch (const ValidationError& e) {
        report(err, e);
        return kExitValidation;
    }

    try {
        std::filesystem::create_directories(out_dir);
        std::optional<JsonlTraceSink> sink;
        if (config.trace)
            sink.emplace(*config.trace);

        auto progress = [&](const GenerationStats& s) {
            if (!global.quiet)
                err << "gen " << s.generation << ' ' << format_real(s.best) << ' ' << format_real(s.worst) << ' '
                    << format_real(s.mean) << '\n';
        };
        const RunResult result = run(rc, *dataset, sink ? &*sink : nullptr, progress);

        TrainedModel model;
        model.topology = rc.topology;
        model.genome = result.best;
        model.transform = dataset->transform;
        model.class_names = dataset->class_names;
        model.metadata = {config.algorithm, config.seed, result.best_fitness, result.generations()};

        const std::filesystem::path dir(out_dir);
        save_model(model, dir / "model.json");
        write_history(dir / "history.csv", result.history);

        out << "best_fitness=" << format_real(result.best_fitness) << " generations=" << result.generations()
            << " stopped_by=" << (result.stopped_by == StopReason::Threshold ? "K" : "Tmax") << "\n";
    } catch (const ValidationError& e) {
        report(err, e);
        return kExitValidation;
    } catch (const Error& e) {
        report(err, e);
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::optional<std::string>& label_column, std::ostream& out, std::ostream& err) {
    try {
        const auto model = load_model(model_path);
        const auto x = load_feature_matrix(data_path, label_column);
        if (x.rows() > 0 && static_cast<std::size_t>(x.cols()) != model.topology.input_dim)
            throw DimensionError("data has " + std::to_string(x.cols()) + " feature columns, model expects " +
                                 std::to_string(model.topology.input_dim));
        for (Eigen::Index r = 0; r < x.rows(); ++r)
            out << classify(model, x.row(r).transpose()) << "\n";
        return kExitOk;
    } catch (const ValidationError& e) {
        report(err, e);
    } catch (const DimensionError& e) {
        report(err, e);
    } catch (const CorruptModelError& e) {
        report(err, e);
    } catch (const IoError& e) {
        report(err, e);
    }
    return kExitValidation;
}

int cmd_export(const std::string& model_path, const std::string& lang, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    Target target;
    try {
        target = parse_target(lang);
    } catch (const ValidationError& e) {
        report(err, e);
        return kExitValidation;
    }
    try {
        const auto model = load_model(model_path);
        std::filesystem::path path = out_path.empty() ? std::filesystem::path(default_file_name(target))
                                                      : std::filesystem::path(out_path);
        if (std::filesystem::is_directory(path))
            path /= default_file_name(target);
        std::ofstream file(path, std::ios::binary);
        if (!file)
            throw IoError("cannot open '" + path.string() + "' for writing");
        file << export_source(model, target);
        if (!file)
            throw IoError("write to '" + path.string() + "' failed");
        out << path.string() << "\n";
        return kExitOk;
    } catch (const CorruptModelError& e) {
        report(err, e);
        return kExitValidation;
    } catch (const Error& e) {
        report(err, e);
        return kExitRuntime;
    }
}

int cmd_gen_data(const std::string& task, const std::string& out_path, std::uint64_t seed, std::size_t size,
                 std::ostream& out, std::ostream& err) {
    LabeledPoints points;
    if (task == "xor") {
        points = make_xor(size, seed);
    } else if (task == "blobs") {
        points = make_blobs(size == 0 ? 200 : size, seed);
    } else {
        err << "error: unknown task '" << task << "' (expected xor or blobs)\n";
        return kExitValidation;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return kExitRuntime;
    }
    write_csv(file, points);
    out << out_path << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Train MLP classifiers with particle swarm, differential evolution or a genetic algorithm,\n"
                 "then export them as standalone Python, Java or JavaScript source.",
                 "evomlp"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    std::uint64_t seed_value = 0;
    std::size_t workers_value = 0;
    std::string trace_value;
    auto* seed_opt = app.add_option("--seed", seed_value, "Master random seed");
    auto* workers_opt = app.add_option("--workers", workers_value, "Worker threads (0 = all cores)");
    auto* trace_opt = app.add_option("--trace", trace_value, "Write a per-member JSON-lines trace to this path");
    app.add_flag("--paper-literal-roulette", global.literal_roulette,
                 "GA roulette replaces with probability f_i / sum(f) instead of the inverse-fitness form");
    app.add_flag("--quiet", global.quiet, "No per-generation progress on standard error");

    std::string config_path, data_path, out_dir = ".";
    std::vector<std::string> overrides;
    auto* train = app.add_subcommand("train", "Train a classifier on a CSV dataset");
    train->add_option("--config", config_path, "JSON config file (defaults used when omitted)");
    train->add_option("--data", data_path, "Training CSV with a header row")->required();
    train->add_option("--out", out_dir, "Output directory for model.json and history.csv");
    train->add_option("--set", overrides, "Override a config key, e.g. --set de.cr=0.5");
    train->footer("Defaults (config file schema):\n" + default_config_json());

    std::string model_path, predict_data;
    std::optional<std::string> label_column;
    auto* predict_cmd = app.add_subcommand("predict", "Print the predicted class for every CSV row");
    predict_cmd->add_option("--model", model_path, "Model file written by train")->required();
    predict_cmd->add_option("--data", predict_data, "Feature CSV with a header row")->required();
    predict_cmd->add_option("--label-column", label_column, "Column to ignore if present");

    std::string export_model, lang, export_out;
    auto* export_cmd = app.add_subcommand("export", "Write the classifier as standalone source code");
    export_cmd->add_option("--model", export_model, "Model file written by train")->required();
    export_cmd->add_option("--lang", lang, "python, java or javascript")->required();
    export_cmd->add_option("--out", export_out, "Output file or directory");

    std::string task, gen_out;
    std::size_t size = 0;
    auto* gen_cmd = app.add_subcommand("gen-data", "Write a synthetic dataset (xor or blobs)");
    gen_cmd->add_option("--task", task, "xor or blobs")->required();
    gen_cmd->add_option("--out", gen_out, "Output CSV path")->required();
    gen_cmd->add_option("--size", size, "Rows (xor: >4 adds jitter; blobs: default 200)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
    }
    if (*seed_opt)
        global.seed = seed_value;
    if (*workers_opt)
        global.workers = workers_value;
    if (*trace_opt)
        global.trace = trace_value;

    if (*train)
        return cmd_train(config_path, data_path, out_dir, overrides, global, out, err);
    if (*predict_cmd)
        return cmd_predict(model_path, predict_data, label_column, out, err);
    if (*export_cmd)
        return cmd_export(export_model, lang, export_out, out, err);
    return cmd_gen_data(task, gen_out, global.seed.value_or(1), size, out, err);
}

}  // namespace evomlp::cli
