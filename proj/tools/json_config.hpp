#pragma once

#include <CLI11.hpp>

#include <string>
#include <vector>

namespace wolct::cli {

/// Reads `--config` files as JSON objects mirroring the command-line flags.
///
/// Top-level keys apply to the root app and to every subcommand (unknown
/// names are ignored); an object under a subcommand's name applies to that
/// subcommand only. "olct_params" is an alias of "params", and a numeric
/// array for either is joined into the "a,b,c,d,u0,w0" form.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(std::vector<std::string> subcommands) : subcommands_(std::move(subcommands)) {}

    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

private:
    std::vector<std::string> subcommands_;
};

}  // namespace wolct::cli
