#include "ranai/agent/model_io.hpp"

#include "ranai/util/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ranai {

namespace {

constexpr const char* kMagic = "ranai-qnetwork";
constexpr int kVersion = 1;

std::string
NextLine(std::istream& in, const char* what)
{
    std::string line;
    if (!ReadLine(in, line))
    {
        throw ModelError(std::string("model file truncated while reading ") + what);
    }
    return line;
}

std::vector<double>
ParseRow(const std::string& line, std::size_t expected, const char* what)
{
    std::istringstream ss(line);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok)
    {
        auto v = ParseDouble(tok);
        if (!v)
        {
            throw ModelError(std::string("malformed number '") + tok + "' in " + what);
        }
        out.push_back(*v);
    }
    if (out.size() != expected)
    {
        throw ModelError(std::string("expected ") + std::to_string(expected) + " values in " + what +
                         ", found " + std::to_string(out.size()));
    }
    return out;
}

} // namespace

std::string
ShapeToString(const std::vector<std::size_t>& shape)
{
    std::string s;
    for (std::size_t i = 0; i < shape.size(); ++i)
    {
        s += (i ? "x" : "") + std::to_string(shape[i]);
    }
    return s;
}

void
SaveModel(std::ostream& out, const QNetwork& net)
{
    out << kMagic << ' ' << kVersion << '\n';
    out << "shape";
    for (auto w : net.Shape())
    {
        out << ' ' << w;
    }
    out << '\n';
    const auto& layers = net.Layers();
    for (std::size_t l = 0; l < layers.size(); ++l)
    {
        const auto& layer = layers[l];
        out << "layer " << l << ' ' << layer.outputs << ' ' << layer.inputs << '\n';
        for (std::size_t o = 0; o < layer.outputs; ++o)
        {
            for (std::size_t i = 0; i < layer.inputs; ++i)
            {
                out << (i ? " " : "") << FormatDouble(layer.weights[o * layer.inputs + i]);
            }
            out << '\n';
        }
        for (std::size_t o = 0; o < layer.outputs; ++o)
        {
            out << (o ? " " : "") << FormatDouble(layer.bias[o]);
        }
        out << '\n';
    }
}

QNetwork
LoadModel(std::istream& in, const std::optional<std::vector<std::size_t>>& expectedShape)
{
    {
        std::istringstream header(NextLine(in, "header"));
        std::string magic;
        int version = 0;
        if (!(header >> magic >> version) || magic != kMagic)
        {
            throw ModelError("not a ranai-qnetwork model file");
        }
        if (version != kVersion)
        {
            throw ModelError("unsupported model version " + std::to_string(version));
        }
    }
    std::vector<std::size_t> shape;
    {
        std::istringstream ss(NextLine(in, "shape"));
        std::string tag;
        ss >> tag;
        if (tag != "shape")
        {
            throw ModelError("missing shape line");
        }
        std::size_t w = 0;
        while (ss >> w)
        {
            shape.push_back(w);
        }
        if (shape.size() < 2)
        {
            throw ModelError("model shape needs at least two widths");
        }
    }
    if (expectedShape && *expectedShape != shape)
    {
        throw ModelError("model shape " + ShapeToString(shape) + " does not match configured shape " +
                         ShapeToString(*expectedShape));
    }

    QNetwork net(shape);
    for (std::size_t l = 0; l < net.Layers().size(); ++l)
    {
        auto& layer = net.Layers()[l];
        std::istringstream ss(NextLine(in, "layer header"));
        std::string tag;
        std::size_t idx = 0, outs = 0, ins = 0;
        if (!(ss >> tag >> idx >> outs >> ins) || tag != "layer" || idx != l ||
            outs != layer.outputs || ins != layer.inputs)
        {
            throw ModelError("bad header for layer " + std::to_string(l));
        }
        for (std::size_t o = 0; o < layer.outputs; ++o)
        {
            const auto row = ParseRow(NextLine(in, "weights"), layer.inputs, "weight row");
            std::copy(row.begin(), row.end(), layer.weights.begin() + o * layer.inputs);
        }
        layer.bias = ParseRow(NextLine(in, "biases"), layer.outputs, "bias row");
    }
    return net;
}

void
SaveModelFile(const std::string& path, const QNetwork& net)
{
    std::ofstream out(path);
    if (!out)
    {
        throw ModelError("cannot write model file " + path);
    }
    SaveModel(out, net);
}

QNetwork
LoadModelFile(const std::string& path, const std::optional<std::vector<std::size_t>>& expectedShape)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ModelError("cannot open model file " + path);
    }
    return LoadModel(in, expectedShape);
}

} // namespace ranai
