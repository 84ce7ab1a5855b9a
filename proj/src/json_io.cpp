#include "nncalc/json_io.hpp"

#include <fstream>

#include "json.hpp"

namespace nncalc {

using nlohmann::json;

namespace {

json act_to_json(const ActivationTag& t) {
    if (t.is_identity()) return "id";
    if (t == ActivationTag::relu()) return "relu";
    return json{{"relu_pow", t.power}};
}

ActivationTag act_from_json(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "id") return ActivationTag::identity();
        if (s == "relu") return ActivationTag::relu();
        throw std::invalid_argument("network json: unknown activation \"" + s + "\"");
    }
    if (j.is_object() && j.contains("relu_pow")) return ActivationTag::relu_power(j["relu_pow"].get<int>());
    throw std::invalid_argument("network json: malformed activation entry");
}

} // namespace

std::string network_to_json(const NeuralNetwork& net) {
    json layers = json::array();
    for (const Layer& l : net.layers) {
        json a = json::array();
        for (std::size_t i = 0; i < l.weights.rows; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < l.weights.cols; ++j) row.push_back(l.weights(i, j));
            a.push_back(std::move(row));
        }
        json acts = json::array();
        for (const ActivationTag& t : l.acts) acts.push_back(act_to_json(t));
        layers.push_back(json{{"A", std::move(a)}, {"b", l.bias}, {"acts", std::move(acts)}});
    }
    return json{{"version", 1}, {"layers", std::move(layers)}}.dump();
}

NeuralNetwork network_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("version") || j["version"].get<int>() != 1)
        throw std::invalid_argument("network json: unsupported version");
    NeuralNetwork net;
    for (const json& jl : j.at("layers")) {
        const json& ja = jl.at("A");
        std::size_t rows = ja.size();
        std::size_t cols = rows ? ja[0].size() : 0;
        DenseMatrix a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            if (ja[i].size() != cols) throw std::invalid_argument("network json: ragged weight matrix");
            for (std::size_t c = 0; c < cols; ++c) a(i, c) = ja[i][c].get<double>();
        }
        DenseVector b = jl.at("b").get<DenseVector>();
        std::vector<ActivationTag> acts;
        for (const json& jt : jl.at("acts")) acts.push_back(act_from_json(jt));
        net.layers.push_back(Layer{std::move(a), std::move(b), std::move(acts)});
    }
    validate(net);
    return net;
}

void save_network(const NeuralNetwork& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << network_to_json(net) << "\n";
}

NeuralNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return network_from_json(text);
}

} // namespace nncalc
