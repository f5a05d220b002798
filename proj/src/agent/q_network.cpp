#include "ranai/agent/q_network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranai {

QNetwork::QNetwork(std::vector<std::size_t> shape)
{
    if (shape.size() < 2)
    {
        throw std::invalid_argument("QNetwork needs at least an input and an output width");
    }
    for (std::size_t l = 0; l + 1 < shape.size(); ++l)
    {
        if (shape[l] == 0 || shape[l + 1] == 0)
        {
            throw std::invalid_argument("QNetwork layer widths must be positive");
        }
        DenseLayer layer;
        layer.inputs = shape[l];
        layer.outputs = shape[l + 1];
        layer.weights.assign(layer.inputs * layer.outputs, 0.0);
        layer.bias.assign(layer.outputs, 0.0);
        m_layers.push_back(std::move(layer));
    }
}

QNetwork
QNetwork::Random(std::vector<std::size_t> shape, RngStream& rng)
{
    QNetwork net(std::move(shape));
    for (auto& layer : net.m_layers)
    {
        const double bound = 1.0 / std::sqrt(static_cast<double>(layer.inputs));
        for (auto& w : layer.weights)
        {
            w = rng.Uniform(-bound, bound);
        }
        for (auto& b : layer.bias)
        {
            b = rng.Uniform(-bound, bound);
        }
    }
    return net;
}

std::vector<std::size_t>
QNetwork::Shape() const
{
    std::vector<std::size_t> s;
    if (m_layers.empty())
    {
        return s;
    }
    s.push_back(m_layers.front().inputs);
    for (const auto& l : m_layers)
    {
        s.push_back(l.outputs);
    }
    return s;
}

std::size_t
QNetwork::ParameterCount() const
{
    std::size_t n = 0;
    for (const auto& l : m_layers)
    {
        n += l.weights.size() + l.bias.size();
    }
    return n;
}

namespace {

void
Affine(const DenseLayer& layer, std::span<const double> in, std::vector<double>& out)
{
    out.assign(layer.bias.begin(), layer.bias.end());
    for (std::size_t o = 0; o < layer.outputs; ++o)
    {
        const double* row = layer.weights.data() + o * layer.inputs;
        double acc = out[o];
        for (std::size_t i = 0; i < layer.inputs; ++i)
        {
            acc += row[i] * in[i];
        }
        out[o] = acc;
    }
}

void
Relu(std::vector<double>& v)
{
    for (auto& x : v)
    {
        x = x > 0.0 ? x : 0.0;
    }
}

} // namespace

std::vector<double>
QNetwork::Forward(std::span<const double> input) const
{
    if (m_layers.empty())
    {
        throw std::logic_error("QNetwork::Forward on an empty network");
    }
    if (input.size() != InputSize())
    {
        throw std::invalid_argument("QNetwork::Forward: expected " + std::to_string(InputSize()) +
                                    " inputs, got " + std::to_string(input.size()));
    }
    std::vector<double> cur(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < m_layers.size(); ++l)
    {
        Affine(m_layers[l], cur, next);
        if (l + 1 < m_layers.size())
        {
            Relu(next);
        }
        cur.swap(next);
    }
    return cur;
}

std::size_t
ArgMax(std::span<const double> values)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
    {
        if (values[i] > values[best])
        {
            best = i;
        }
    }
    return best;
}

double
SquaredErrorLoss(const QNetwork& net, std::span<const QSample> batch, QNetwork& grad)
{
    if (grad.Shape() != net.Shape())
    {
        grad = QNetwork(net.Shape());
    }
    else
    {
        for (auto& l : grad.Layers())
        {
            std::fill(l.weights.begin(), l.weights.end(), 0.0);
            std::fill(l.bias.begin(), l.bias.end(), 0.0);
        }
    }
    if (batch.empty())
    {
        return 0.0;
    }

    const auto& layers = net.Layers();
    const std::size_t depth = layers.size();
    const double scale = 2.0 / static_cast<double>(batch.size());
    double loss = 0.0;

    // inputs[l] is the input of layer l (post-activation of layer l-1).
    std::vector<std::vector<double>> inputs(depth + 1);
    std::vector<double> delta;
    std::vector<double> prevDelta;

    for (const auto& sample : batch)
    {
        if (sample.state.size() != net.InputSize() || sample.action >= net.OutputSize())
        {
            throw std::invalid_argument("SquaredErrorLoss: sample does not match network shape");
        }
        inputs[0].assign(sample.state.begin(), sample.state.end());
        for (std::size_t l = 0; l < depth; ++l)
        {
            Affine(layers[l], inputs[l], inputs[l + 1]);
            if (l + 1 < depth)
            {
                Relu(inputs[l + 1]);
            }
        }
        const double q = inputs[depth][sample.action];
        const double err = q - sample.target;
        loss += err * err;

        delta.assign(net.OutputSize(), 0.0);
        delta[sample.action] = scale * err;
        for (std::size_t l = depth; l-- > 0;)
        {
            const auto& layer = layers[l];
            auto& g = grad.Layers()[l];
            const auto& in = inputs[l];
            for (std::size_t o = 0; o < layer.outputs; ++o)
            {
                const double d = delta[o];
                if (d == 0.0)
                {
                    continue;
                }
                double* row = g.weights.data() + o * layer.inputs;
                for (std::size_t i = 0; i < layer.inputs; ++i)
                {
                    row[i] += d * in[i];
                }
                g.bias[o] += d;
            }
            if (l == 0)
            {
                break;
            }
            // Back through W^T and the ReLU of layer l-1 (active iff output > 0).
            prevDelta.assign(layer.inputs, 0.0);
            for (std::size_t o = 0; o < layer.outputs; ++o)
            {
                const double d = delta[o];
                if (d == 0.0)
                {
                    continue;
                }
                const double* row = layer.weights.data() + o * layer.inputs;
                for (std::size_t i = 0; i < layer.inputs; ++i)
                {
                    prevDelta[i] += row[i] * d;
                }
            }
            for (std::size_t i = 0; i < layer.inputs; ++i)
            {
                if (!(in[i] > 0.0))
                {
                    prevDelta[i] = 0.0;
                }
            }
            delta.swap(prevDelta);
        }
    }
    return loss / static_cast<double>(batch.size());
}

void
SgdStep(QNetwork& net, const QNetwork& grad, double learningRate, double weightDecay)
{
    net.ZipParameters(grad, [&](double& p, double g) { p -= learningRate * (g + weightDecay * p); });
}

double
DoubleQTarget(const QNetwork& online,
              const QNetwork& target,
              std::span<const double> nextState,
              double reward,
              double discount)
{
    const auto qOnline = online.Forward(nextState);
    const std::size_t best = ArgMax(qOnline);
    const auto qTarget = target.Forward(nextState);
    return reward + discount * qTarget[best];
}

} // namespace ranai
