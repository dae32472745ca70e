#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include <CLI11.hpp>

#include "curvseg/config.hpp"
#include "curvseg/driver.hpp"
#include "curvseg/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Segments a grayscale bitmap by evolving a closed curve under curvature and image force"};
    std::string config_path;
    bool verbose = false;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_flag("--verbose", verbose, "Print progress to stderr");
    app.add_option("--seed", seed, "Seed for synthetic noise");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) throw curvseg::IoError("cannot open config " + config_path);
        const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const curvseg::RunConfig config = curvseg::parse_config(text);
        const auto base = std::filesystem::path(config_path).parent_path();

        const curvseg::RunResult result =
            curvseg::run_segmentation(config, base, seed, verbose ? &std::cerr : nullptr, 100);
        std::cout << "stop=" << curvseg::to_string(result.reason)
                  << " steps=" << result.state.step_index << " time=" << result.state.time << '\n';
        return 0;
    } catch (const curvseg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvseg::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvseg::InvalidShapeParams& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvseg::InvalidCurve& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const curvseg::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const curvseg::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const curvseg::ImageError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
