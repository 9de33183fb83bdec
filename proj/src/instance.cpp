#include "cgame/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cgame/common.hpp"

namespace cgame {

using nlohmann::json;

bool GameInstance::all_gamma_one() const {
    for (const auto& a : arms)
        if (a.gamma != 1.0) return false;
    return true;
}

double GameInstance::gamma_max() const {
    double g = 0;
    for (const auto& a : arms) g = std::max(g, a.gamma);
    return g;
}

void GameInstance::validate() const {
    if (arms.empty()) throw config_error("instance needs at least one arm");
    if (T < 1) throw config_error("horizon T must be at least 1");
    for (const auto& a : arms) {
        if (!(a.mu >= 0.0 && a.mu <= 1.0)) throw config_error("arm mean must be in [0,1]");
        if (!(a.c >= 0.0 && a.c <= 1.0)) throw config_error("arm cost must be in [0,1]");
        if (!(a.gamma >= 0.0 && a.gamma <= 1.0))
            throw config_error("arm gamma must be in [0,1]");
    }
    if (utility_override) {
        const auto& o = *utility_override;
        if (!(o.n_low < o.n_high))
            throw config_error("utility override needs n_low < n_high");
    }
}

namespace {

ShrinkageFn shrinkage_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "sqrt") return ShrinkageFn::sqrt_decay(j.at("q"), j.at("h"));
    if (type == "linear") return ShrinkageFn::linear(j.at("intercept"), j.at("slope"));
    if (type == "scaled")
        return ShrinkageFn::scaled(j.at("lambda"), shrinkage_from_json(j.at("inner")));
    if (type == "table") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j.at("points"))
            pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        return ShrinkageFn::table(std::move(pts));
    }
    throw config_error("unknown shrinkage type: " + type);
}

json shrinkage_to_json(const ShrinkageFn& f) {
    json j;
    switch (f.kind()) {
        case ShrinkageFn::Kind::SqrtDecay:
            j = {{"type", "sqrt"}, {"q", f.q()}, {"h", f.h()}};
            break;
        case ShrinkageFn::Kind::Linear:
            j = {{"type", "linear"}, {"intercept", f.intercept()}, {"slope", f.slope()}};
            break;
        case ShrinkageFn::Kind::Scaled:
            j = {{"type", "scaled"}, {"lambda", f.lambda()}, {"inner", shrinkage_to_json(f.inner())}};
            break;
        case ShrinkageFn::Kind::Table: {
            json pts = json::array();
            for (auto& [n, v] : f.points()) pts.push_back({n, v});
            j = {{"type", "table"}, {"points", pts}};
            break;
        }
    }
    return j;
}

LinkFn link_from_json(const json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "bradley_terry") return LinkFn::bradley_terry();
    if (type == "gadget")
        return LinkFn::piecewise_gadget(j.at("lo"), j.at("hi"), j.at("knee"));
    if (type == "table") {
        std::vector<double> xs = j.at("x").get<std::vector<double>>();
        std::vector<double> ys = j.at("y").get<std::vector<double>>();
        std::vector<std::vector<double>> vals =
            j.at("values").get<std::vector<std::vector<double>>>();
        return LinkFn::table(std::move(xs), std::move(ys), std::move(vals));
    }
    throw config_error("unknown link type: " + type);
}

json link_to_json(const LinkFn& f) {
    switch (f.kind()) {
        case LinkFn::Kind::BradleyTerry:
            return {{"type", "bradley_terry"}};
        case LinkFn::Kind::PiecewiseGadget:
            return {{"type", "gadget"}, {"lo", f.lo()}, {"hi", f.hi()}, {"knee", f.knee()}};
        case LinkFn::Kind::Table:
            return {{"type", "table"}, {"x", f.xs()}, {"y", f.ys()}, {"values", f.values()}};
    }
    return {};
}

}  // namespace

GameInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("bad instance JSON: ") + e.what());
    }
    GameInstance inst;
    try {
        for (const auto& ja : j.at("arms")) {
            ArmSpec a{ja.at("mu"), ja.at("c"), ja.at("gamma"),
                      shrinkage_from_json(ja.at("shrinkage"))};
            inst.arms.push_back(std::move(a));
        }
        inst.T = j.at("T").get<int>();
        inst.link = link_from_json(j.at("link"));
        if (j.contains("utility_override")) {
            const auto& jo = j.at("utility_override");
            if (jo.at("type").get<std::string>() != "pause_threshold")
                throw config_error("unknown utility override type");
            inst.utility_override = PauseThresholdOverride{
                jo.at("nu"), jo.at("nu_prime"), jo.at("n_low"), jo.at("n_high")};
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("bad instance JSON: ") + e.what());
    }
    inst.validate();
    return inst;
}

GameInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

std::string instance_to_json(const GameInstance& inst) {
    json j;
    j["arms"] = json::array();
    for (const auto& a : inst.arms)
        j["arms"].push_back({{"mu", a.mu},
                             {"c", a.c},
                             {"gamma", a.gamma},
                             {"shrinkage", shrinkage_to_json(a.shrink)}});
    j["T"] = inst.T;
    j["link"] = link_to_json(inst.link);
    if (inst.utility_override) {
        const auto& o = *inst.utility_override;
        j["utility_override"] = {{"type", "pause_threshold"},
                                 {"nu", o.nu},
                                 {"nu_prime", o.nu_prime},
                                 {"n_low", o.n_low},
                                 {"n_high", o.n_high}};
    }
    return j.dump(2);
}

}  // namespace cgame
