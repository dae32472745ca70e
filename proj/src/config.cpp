#include "curvseg/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "curvseg/errors.hpp"

namespace curvseg {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

/// Reads fields of one JSON object and rejects keys nobody asked for.
class ObjectReader {
public:
    ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw SchemaError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number()) throw SchemaError(path(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw RangeError(path(key), "must be finite");
        return d;
    }

    long long integer(const std::string& key, long long fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_number_integer()) throw SchemaError(path(key), "expected an integer");
        return v.get<long long>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_boolean()) throw SchemaError(path(key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string& key) {
        const json& v = raw(key);
        if (!v.is_string()) throw SchemaError(path(key), "expected a string");
        return v.get<std::string>();
    }

    Vec2 point(const std::string& key, Vec2 fallback) {
        if (!has(key)) return fallback;
        const json& v = raw(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw SchemaError(path(key), "expected [x, y]");
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.contains(it.key())) {
                throw SchemaError(path(it.key()), "unknown field");
            }
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

SyntheticImage parse_synthetic(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    SyntheticImage img;
    if (!r.has("shape")) throw SchemaError(r.path("shape"), "required");
    const std::string shape = r.string("shape");
    if (shape == "disk") {
        DiskShape s;
        s.center = r.point("center", s.center);
        s.radius = r.number("radius", s.radius);
        img.shape = s;
    } else if (shape == "rectangle") {
        RectangleShape s;
        s.center = r.point("center", s.center);
        s.half_width = r.number("half_width", s.half_width);
        s.half_height = r.number("half_height", s.half_height);
        s.corner_radius = r.number("corner_radius", s.corner_radius);
        img.shape = s;
    } else if (shape == "c_shape") {
        CShape s;
        s.center = r.point("center", s.center);
        s.outer_radius = r.number("outer_radius", s.outer_radius);
        s.inner_radius = r.number("inner_radius", s.inner_radius);
        s.gap_width = r.number("gap_width", s.gap_width);
        img.shape = s;
    } else {
        throw SchemaError(r.path("shape"), "expected disk, rectangle or c_shape, got '" + shape + "'");
    }
    const long long width = r.integer("width", img.width);
    const long long height = r.integer("height", img.height);
    if (width < 1 || height < 1 || width > 20000 || height > 20000) {
        throw RangeError(r.path(width < 1 || width > 20000 ? "width" : "height"),
                         "must lie in [1, 20000]");
    }
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    if (r.has("noise")) {
        ObjectReader n(r.raw("noise"), r.path("noise"));
        SaltNoise noise;
        noise.density = n.number("density", noise.density);
        noise.amplitude = static_cast<int>(n.integer("amplitude", noise.amplitude));
        noise.blob_radius_px = n.number("blob_radius_px", noise.blob_radius_px);
        if (!(noise.density >= 0.0 && noise.density <= 1.0)) {
            throw RangeError(n.path("density"), "must lie in [0, 1]");
        }
        if (noise.amplitude < 1 || noise.amplitude > 255) {
            throw RangeError(n.path("amplitude"), "must lie in [1, 255]");
        }
        if (!(noise.blob_radius_px >= 0.5)) {
            throw RangeError(n.path("blob_radius_px"), "must be at least 0.5");
        }
        n.finish();
        img.noise = noise;
    }
    r.finish();
    return img;
}

StoppingCriterion parse_stop(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    StoppingCriterion stop;
    if (r.has("fixed_time")) {
        stop.fixed_time = r.number("fixed_time", 0.0);
        if (!(*stop.fixed_time > 0.0)) throw RangeError(r.path("fixed_time"), "must be positive");
    }
    if (r.has("stationary")) {
        const json& s = r.raw("stationary");
        StationaryCriterion crit;
        if (s.is_boolean()) {
            if (!s.get<bool>()) throw SchemaError(r.path("stationary"), "use an object or true");
        } else {
            ObjectReader sr(s, r.path("stationary"));
            crit.speed_tol = sr.number("speed_tol", crit.speed_tol);
            const long long window = sr.integer("window", static_cast<long long>(crit.window));
            if (!(crit.speed_tol > 0.0)) throw RangeError(sr.path("speed_tol"), "must be positive");
            if (window < 1) throw RangeError(sr.path("window"), "must be at least 1");
            crit.window = static_cast<std::size_t>(window);
            sr.finish();
        }
        stop.stationary = crit;
    }
    if (r.has("max_steps")) {
        const long long steps = r.integer("max_steps", 0);
        if (steps < 0) throw RangeError(r.path("max_steps"), "must be non-negative");
        stop.max_steps = static_cast<std::size_t>(steps);
    }
    r.finish();
    if (!stop.fixed_time && !stop.stationary && !stop.max_steps) {
        throw SchemaError(path, "needs at least one of fixed_time, stationary, max_steps");
    }
    return stop;
}

OutputKind parse_output_kind(const std::string& s, const std::string& path) {
    if (s == "svg") return OutputKind::kSvg;
    if (s == "csv") return OutputKind::kCsv;
    if (s == "json_log") return OutputKind::kJsonLog;
    if (s == "overlay_pgm") return OutputKind::kOverlayPgm;
    throw SchemaError(path, "expected svg, csv, json_log or overlay_pgm, got '" + s + "'");
}

json point_json(const Vec2& p) { return json::array({p.x, p.y}); }

json synthetic_json(const SyntheticImage& img) {
    json j = std::visit(
        [](const auto& s) -> json {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, DiskShape>) {
                return {{"shape", "disk"}, {"center", point_json(s.center)}, {"radius", s.radius}};
            } else if constexpr (std::is_same_v<S, RectangleShape>) {
                return {{"shape", "rectangle"},
                        {"center", point_json(s.center)},
                        {"half_width", s.half_width},
                        {"half_height", s.half_height},
                        {"corner_radius", s.corner_radius}};
            } else {
                return {{"shape", "c_shape"},
                        {"center", point_json(s.center)},
                        {"outer_radius", s.outer_radius},
                        {"inner_radius", s.inner_radius},
                        {"gap_width", s.gap_width}};
            }
        },
        img.shape);
    j["width"] = img.width;
    j["height"] = img.height;
    if (img.noise) {
        j["noise"] = {{"density", img.noise->density},
                      {"amplitude", img.noise->amplitude},
                      {"blob_radius_px", img.noise->blob_radius_px}};
    }
    return j;
}

}  // namespace

StoppingCriterion default_stop() {
    StoppingCriterion stop;
    stop.stationary = StationaryCriterion{};
    stop.max_steps = 1'000'000;
    return stop;
}

EvolutionParams RunConfig::evolution_params() const {
    EvolutionParams p;
    p.redistribution = {epsilon, omega};
    p.lambda = lambda;
    p.limit_relaxation_step = limit_relaxation_step;
    return p;
}

PolygonalCurve RunConfig::initial_curve() const {
    return PolygonalCurve::circle(initial.center, initial.radius, n_vertices);
}

const char* to_string(OutputKind kind) {
    switch (kind) {
        case OutputKind::kSvg: return "svg";
        case OutputKind::kCsv: return "csv";
        case OutputKind::kJsonLog: return "json_log";
        case OutputKind::kOverlayPgm: return "overlay_pgm";
    }
    return "unknown";
}

RunConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("<root>", std::string("invalid JSON: ") + e.what());
    }
    ObjectReader r(root, "");
    RunConfig cfg;

    if (!r.has("image")) throw SchemaError("image", "required (PGM path or synthetic shape)");
    const json& image = r.raw("image");
    if (image.is_string()) {
        cfg.image = image.get<std::string>();
        if (std::get<std::string>(cfg.image).empty()) throw SchemaError("image", "empty path");
    } else {
        cfg.image = parse_synthetic(image, "image");
    }

    cfg.f_min = r.number("f_min", cfg.f_min);
    cfg.f_max = r.number("f_max", cfg.f_max);
    if (!(cfg.f_min < 0.0)) throw RangeError("f_min", "must be negative");
    if (!(cfg.f_max > 0.0)) throw RangeError("f_max", "must be positive");

    const long long n = r.integer("n_vertices", static_cast<long long>(cfg.n_vertices));
    if (n < 6) throw RangeError("n_vertices", "must be at least 6");
    cfg.n_vertices = static_cast<std::size_t>(n);

    cfg.epsilon = r.number("epsilon", cfg.epsilon);
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) throw RangeError("epsilon", "must lie in [0, 1)");
    cfg.omega = r.number("omega", cfg.omega);
    if (!(cfg.omega >= 0.0)) throw RangeError("omega", "must be non-negative");
    cfg.lambda = r.number("lambda", cfg.lambda);
    if (!(cfg.lambda > 0.0)) throw RangeError("lambda", "must be positive");
    cfg.limit_relaxation_step = r.boolean("limit_relaxation_step", cfg.limit_relaxation_step);

    if (r.has("force_sampling")) {
        ObjectReader fs(r.raw("force_sampling"), "force_sampling");
        if (fs.has("mode")) {
            const std::string mode = fs.string("mode");
            if (mode == "pixel") {
                cfg.force_sampling.mode = SamplingMode::kPixel;
            } else if (mode == "bilinear") {
                cfg.force_sampling.mode = SamplingMode::kBilinear;
            } else {
                throw SchemaError(fs.path("mode"), "expected pixel or bilinear, got '" + mode + "'");
            }
        }
        cfg.force_sampling.smoothing_px = fs.number("smoothing_px", cfg.force_sampling.smoothing_px);
        if (!(cfg.force_sampling.smoothing_px >= 0.0)) {
            throw RangeError(fs.path("smoothing_px"), "must be non-negative");
        }
        fs.finish();
    }

    if (r.has("initial")) {
        ObjectReader init(r.raw("initial"), "initial");
        if (!init.has("circle")) throw SchemaError("initial.circle", "required");
        ObjectReader c(init.raw("circle"), "initial.circle");
        cfg.initial.center = c.point("center", cfg.initial.center);
        cfg.initial.radius = c.number("radius", cfg.initial.radius);
        if (!(cfg.initial.radius > 0.0)) throw RangeError("initial.circle.radius", "must be positive");
        c.finish();
        init.finish();
    }

    if (r.has("stop")) cfg.stop = parse_stop(r.raw("stop"), "stop");

    if (r.has("outputs")) {
        const json& outs = r.raw("outputs");
        if (!outs.is_array()) throw SchemaError("outputs", "expected an array");
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const std::string path = "outputs[" + std::to_string(i) + "]";
            ObjectReader o(outs[i], path);
            if (!o.has("type")) throw SchemaError(o.path("type"), "required");
            if (!o.has("path")) throw SchemaError(o.path("path"), "required");
            OutputSpec spec{parse_output_kind(o.string("type"), o.path("type")), o.string("path")};
            if (spec.path.empty()) throw SchemaError(o.path("path"), "empty path");
            o.finish();
            cfg.outputs.push_back(std::move(spec));
        }
    }

    if (r.has("snapshot_times")) {
        const json& times = r.raw("snapshot_times");
        if (!times.is_array()) throw SchemaError("snapshot_times", "expected an array");
        for (std::size_t i = 0; i < times.size(); ++i) {
            const std::string path = "snapshot_times[" + std::to_string(i) + "]";
            if (!times[i].is_number()) throw SchemaError(path, "expected a number");
            const double t = times[i].get<double>();
            if (!(t >= 0.0) || !std::isfinite(t)) throw RangeError(path, "must be non-negative");
            if (!cfg.snapshot_times.empty() && t < cfg.snapshot_times.back()) {
                throw RangeError(path, "snapshot times must be non-decreasing");
            }
            cfg.snapshot_times.push_back(t);
        }
    }

    r.finish();
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json j;
    if (const auto* path = std::get_if<std::string>(&cfg.image)) {
        j["image"] = *path;
    } else {
        j["image"] = synthetic_json(std::get<SyntheticImage>(cfg.image));
    }
    j["f_min"] = cfg.f_min;
    j["f_max"] = cfg.f_max;
    j["n_vertices"] = cfg.n_vertices;
    j["epsilon"] = cfg.epsilon;
    j["omega"] = cfg.omega;
    j["lambda"] = cfg.lambda;
    j["limit_relaxation_step"] = cfg.limit_relaxation_step;
    j["force_sampling"] = {
        {"mode", cfg.force_sampling.mode == SamplingMode::kPixel ? "pixel" : "bilinear"},
        {"smoothing_px", cfg.force_sampling.smoothing_px}};
    j["initial"] = {{"circle", {{"center", point_json(cfg.initial.center)}, {"radius", cfg.initial.radius}}}};
    json stop = json::object();
    if (cfg.stop.fixed_time) stop["fixed_time"] = *cfg.stop.fixed_time;
    if (cfg.stop.stationary) {
        stop["stationary"] = {{"speed_tol", cfg.stop.stationary->speed_tol},
                              {"window", cfg.stop.stationary->window}};
    }
    if (cfg.stop.max_steps) stop["max_steps"] = *cfg.stop.max_steps;
    j["stop"] = stop;
    j["outputs"] = json::array();
    for (const OutputSpec& o : cfg.outputs) {
        j["outputs"].push_back({{"type", to_string(o.kind)}, {"path", o.path}});
    }
    j["snapshot_times"] = cfg.snapshot_times;
    return j.dump(2);
}

}  // namespace curvseg
