#pragma once

#include "ranai/sim/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ranai {

struct DenseLayer
{
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    std::vector<double> weights; // outputs x inputs, row-major
    std::vector<double> bias;    // outputs

    bool operator==(const DenseLayer&) const = default;
};

/// Feed-forward Q-value network: ReLU on hidden layers, identity output.
class QNetwork
{
  public:
    QNetwork() = default;
    /// Zero-initialized network with layer widths `shape` (input first).
    explicit QNetwork(std::vector<std::size_t> shape);

    /// Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
    static QNetwork Random(std::vector<std::size_t> shape, RngStream& rng);

    /// Throws std::invalid_argument on an input size mismatch.
    std::vector<double> Forward(std::span<const double> input) const;

    std::vector<std::size_t> Shape() const;
    std::size_t InputSize() const { return m_layers.front().inputs; }
    std::size_t OutputSize() const { return m_layers.back().outputs; }
    std::size_t ParameterCount() const;

    std::vector<DenseLayer>& Layers() { return m_layers; }
    const std::vector<DenseLayer>& Layers() const { return m_layers; }

    /// Applies f to every parameter of this network paired with the
    /// parameter at the same position in `other` (same shape required).
    template <typename F>
    void ZipParameters(const QNetwork& other, F&& f);

    bool operator==(const QNetwork&) const = default;

  private:
    std::vector<DenseLayer> m_layers;
};

template <typename F>
void
QNetwork::ZipParameters(const QNetwork& other, F&& f)
{
    for (std::size_t l = 0; l < m_layers.size(); ++l)
    {
        auto& a = m_layers[l];
        const auto& b = other.m_layers.at(l);
        for (std::size_t i = 0; i < a.weights.size(); ++i)
        {
            f(a.weights[i], b.weights.at(i));
        }
        for (std::size_t i = 0; i < a.bias.size(); ++i)
        {
            f(a.bias[i], b.bias.at(i));
        }
    }
}

/// Index of the largest value; ties go to the lowest index.
std::size_t ArgMax(std::span<const double> values);

struct QSample
{
    std::span<const double> state;
    std::size_t action = 0;
    double target = 0.0;
};

/// Mean squared TD error over the batch, (1/B) sum (y - Q(s, a))^2, and its
/// gradient with respect to every parameter (written into `grad`, which is
/// reshaped to match `net`).
double SquaredErrorLoss(const QNetwork& net, std::span<const QSample> batch, QNetwork& grad);

/// Plain SGD with decoupled-into-gradient L2: p -= lr * (g + weightDecay * p).
void SgdStep(QNetwork& net, const QNetwork& grad, double learningRate, double weightDecay);

/// Double-Q target r + discount * Q_target(s', argmax_a Q_online(s', a)).
double DoubleQTarget(const QNetwork& online,
                     const QNetwork& target,
                     std::span<const double> nextState,
                     double reward,
                     double discount);

} // namespace ranai
