#ifndef EVOMLP_CLI_HPP
#define EVOMLP_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evomlp/data.hpp"
#include "evomlp/engine.hpp"

namespace evomlp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;

/// Training configuration as read from the JSON config file. Parameters for
/// all three optimizers are kept so every section is validated.
struct CliConfig {
    std::string algorithm = "de";
    std::string label_column = "label";
    std::size_t population_size = 50;
    std::uint64_t seed = 1;
    std::size_t workers = 0;  // 0 = all cores
    InitRange init_range;
    std::vector<std::size_t> hidden_layers{4};
    Activation activation = Activation::Tanh;
    StoppingRule stopping;
    PreprocessPolicy preprocess;
    pso::Params pso;
    de::Params de;
    ga::Params ga;
    std::optional<std::filesystem::path> trace;

    /// RunConfig for the selected algorithm with the given data dimensions.
    RunConfig run_config(std::size_t input_dim, std::size_t output_dim) const;
};

/// The defaults table as a JSON document (the config-file schema).
std::string default_config_json();

/// Builds a config from JSON text (empty = all defaults) plus `key.path=value`
/// overrides. Unknown keys and bad values are all reported in one
/// ValidationError, including every optimizer bound.
CliConfig parse_config(std::string_view json_text, const std::vector<std::string>& overrides = {});

/// Entry point behind the `evomlp` executable. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evomlp::cli

#endif  // EVOMLP_CLI_HPP
