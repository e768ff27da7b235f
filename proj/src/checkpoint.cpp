#include "sagecut/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace sagecut {

namespace {

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("checkpoint: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void write_matrix(std::ostream& out, const MatX<double>& m) {
    write_u64(out, static_cast<std::uint64_t>(m.rows()));
    write_u64(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double v = m(r, c);
            out.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
}

MatX<double> read_matrix(std::istream& in) {
    const auto rows = static_cast<Eigen::Index>(read_u64(in));
    const auto cols = static_cast<Eigen::Index>(read_u64(in));
    MatX<double> m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            double v;
            in.read(reinterpret_cast<char*>(&v), sizeof(double));
            if (!in) throw std::runtime_error("checkpoint: truncated matrix data");
            m(r, c) = v;
        }
    return m;
}

}  // namespace

void save_checkpoint(const SageModel<double>& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write("CFCK", 4);
    write_u64(out, model.layers.size());
    for (const auto& layer : model.layers) {
        write_matrix(out, layer.message);
        write_matrix(out, layer.update);
    }
    write_matrix(out, model.head);
    if (!out) throw std::runtime_error("write failed: " + path);
}

SageModel<double> load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "CFCK", 4) != 0)
        throw std::runtime_error(path + ": not a checkpoint file (bad magic)");
    const std::uint64_t num_layers = read_u64(in);
    SageModel<double> model;
    for (std::uint64_t l = 0; l < num_layers; ++l) {
        SageLayer<double> layer;
        layer.message = read_matrix(in);
        layer.update = read_matrix(in);
        model.layers.push_back(std::move(layer));
    }
    model.head = read_matrix(in);
    return model;
}

}  // namespace sagecut
