#include "deepesn/config.hpp"

#include "deepesn/errors.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace deepesn {

using nlohmann::json;

std::optional<std::filesystem::path> apply_config_json(std::string_view text, ExperimentConfig& cfg)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidArgument("config: top level must be a JSON object");

    std::optional<std::filesystem::path> out;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "task") cfg.task = parse_task_kind(value.get<std::string>());
            else if (key == "laser-path") cfg.laser_path = value.get<std::string>();
            else if (key == "layers") cfg.layers = value.get<std::size_t>();
            else if (key == "units") cfg.units = value.get<std::size_t>();
            else if (key == "rho") cfg.rho = value.get<double>();
            else if (key == "omega-in") cfg.omega_in = value.get<double>();
            else if (key == "omega-il") {
                if (value.is_array()) cfg.omega_il_grid = value.get<std::vector<double>>();
                else cfg.omega_il_grid = {value.get<double>()};
            }
            else if (key == "realizations") cfg.realizations = value.get<std::size_t>();
            else if (key == "train-len") cfg.train_len = value.get<std::size_t>();
            else if (key == "test-len") cfg.test_len = value.get<std::size_t>();
            else if (key == "washout") cfg.washout = value.get<std::size_t>();
            else if (key == "lms-eta") cfg.lms.learning_rate = value.get<double>();
            else if (key == "lms-epochs") cfg.lms.epochs = value.get<std::size_t>();
            else if (key == "seed") cfg.master_seed = value.get<std::uint64_t>();
            else if (key == "explained") cfg.explained = value.get<double>();
            else if (key == "out") out = value.get<std::string>();
            else if (key == "threads") cfg.threads = value.get<std::size_t>();
            else if (key == "ridge") cfg.ridge = value.get<double>();
            else if (key == "readout-bias") cfg.readout_bias = value.get<bool>();
            else if (key == "ud-centered") cfg.ud_centered = value.get<bool>();
            else if (key == "laser-scale") cfg.laser_scale = value.get<double>();
            else if (key == "weights-dir") cfg.weights_dir = value.get<std::string>();
            else if (key == "traces-dir") cfg.traces_dir = value.get<std::string>();
            else throw InvalidArgument("config: unknown key '" + key + "'");
        } catch (const json::exception& e) {
            throw InvalidArgument("config: bad value for '" + key + "': " + e.what());
        }
    }
    return out;
}

std::optional<std::filesystem::path> apply_config_file(const std::filesystem::path& path, ExperimentConfig& cfg)
{
    std::ifstream f(path);
    if (!f) throw DataError("config: cannot read " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return apply_config_json(ss.str(), cfg);
}

std::string config_to_json(const ExperimentConfig& cfg)
{
    json j;
    j["task"] = to_string(cfg.task);
    if (cfg.laser_path) j["laser-path"] = cfg.laser_path->string();
    j["layers"] = cfg.layers;
    j["units"] = cfg.units;
    j["rho"] = cfg.rho;
    j["omega-in"] = cfg.omega_in;
    j["omega-il"] = cfg.omega_il_grid;
    j["realizations"] = cfg.realizations;
    j["train-len"] = cfg.train_len;
    j["test-len"] = cfg.effective_test_len();
    j["washout"] = cfg.washout;
    j["lms-eta"] = cfg.lms.learning_rate;
    j["lms-epochs"] = cfg.lms.epochs;
    j["seed"] = cfg.master_seed;
    j["explained"] = cfg.explained;
    j["threads"] = cfg.threads;
    j["ridge"] = cfg.ridge;
    j["readout-bias"] = cfg.readout_bias;
    j["ud-centered"] = cfg.ud_centered;
    j["laser-scale"] = cfg.laser_scale;
    if (cfg.weights_dir) j["weights-dir"] = cfg.weights_dir->string();
    if (cfg.traces_dir) j["traces-dir"] = cfg.traces_dir->string();
    return j.dump(2);
}

} // namespace deepesn
