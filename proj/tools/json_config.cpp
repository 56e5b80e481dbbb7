#include "json_config.hpp"

#include <json.hpp>

#include <istream>

namespace wolct::cli {

namespace {

using nlohmann::json;

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

std::string option_name(const std::string& key) { return key == "olct_params" ? "params" : key; }

std::vector<std::string> inputs_for(const std::string& name, const json& v) {
    if (!v.is_array()) return {scalar_text(v)};
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(scalar_text(e));
    if (name == "params") {
        std::string joined;
        for (const auto& s : out) joined += (joined.empty() ? "" : ",") + s;
        return {joined};
    }
    return out;
}

void add_item(std::vector<CLI::ConfigItem>& items, std::vector<std::string> parents, const std::string& key,
              const json& value) {
    CLI::ConfigItem item;
    item.parents = std::move(parents);
    item.name = option_name(key);
    item.inputs = inputs_for(item.name, value);
    items.push_back(std::move(item));
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
        if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& r = opt->results();
            out[name] = r.size() == 1 ? json(r.front()) : json(r);
        } else if (default_also && !opt->get_default_str().empty()) {
            out[name] = opt->get_default_str();
        }
    }
    return out.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    json doc;
    try {
        doc = json::parse(input);
    } catch (const json::parse_error& e) {
        throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config must be a JSON object");

    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
        const bool is_section =
            value.is_object() && std::find(subcommands_.begin(), subcommands_.end(), key) != subcommands_.end();
        if (is_section) {
            for (const auto& [k, v] : value.items()) add_item(items, {key}, k, v);
            continue;
        }
        add_item(items, {}, key, value);
        for (const auto& sub : subcommands_) add_item(items, {sub}, key, value);
    }
    return items;
}

}  // namespace wolct::cli
