#include "qeigen/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qeigen/errors.hpp"

namespace qeigen::io {

namespace {

using nlohmann::json;

spectra::HermitianOperator parse_operator(const json& j) {
    if (!j.is_object()) throw ParseError("matrix JSON must be an object");
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ParseError("matrix JSON needs an integer \"dim\"");
    const long long dim_raw = j["dim"].get<long long>();
    if (dim_raw < 2) throw DimNotPowerOfTwo("matrix dimension must be at least 2");
    const auto dim = static_cast<std::size_t>(dim_raw);
    if ((dim & (dim - 1)) != 0) throw DimNotPowerOfTwo("matrix dimension must be a power of two");

    const std::string format = j.value("format", std::string{});
    if (!j.contains("entries") || !j["entries"].is_array())
        throw ParseError("matrix JSON needs an \"entries\" array");
    const auto& entries = j["entries"];

    if (format == "dense") {
        if (entries.size() != dim * dim)
            throw ParseError("dense matrix needs dim*dim [re, im] pairs");
        ComplexMatrix m(dim);
        for (std::size_t k = 0; k < entries.size(); ++k) {
            const auto& pair = entries[k];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
                !pair[1].is_number())
                throw ParseError("dense entry must be a [re, im] pair");
            m.entries()[k] = cplx(pair[0].get<double>(), pair[1].get<double>());
        }
        if (m.hermiticity_defect() > 1e-12)
            throw NotHermitian("dense matrix violates Hermitian symmetry beyond 1e-12");
        return spectra::HermitianOperator::from_dense(std::move(m));
    }
    if (format == "coo") {
        std::vector<spectra::Triplet> triplets;
        triplets.reserve(entries.size());
        for (const auto& item : entries) {
            if (!item.is_array() || item.size() != 4 || !item[0].is_number_integer() ||
                !item[1].is_number_integer() || !item[2].is_number() || !item[3].is_number())
                throw ParseError("coo entry must be [row, col, re, im]");
            const long long row = item[0].get<long long>();
            const long long col = item[1].get<long long>();
            if (row < 0 || col < 0) throw ParseError("coo indices must be nonnegative");
            if (row > col) throw ParseError("coo entries must satisfy row <= col");
            triplets.push_back({static_cast<std::size_t>(row), static_cast<std::size_t>(col),
                                cplx(item[2].get<double>(), item[3].get<double>())});
        }
        return spectra::HermitianOperator::from_triplets(dim, std::move(triplets));
    }
    throw ParseError("matrix format must be \"dense\" or \"coo\"");
}

} // namespace

LoadedMatrix parse_matrix_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (j.is_object() && j.contains("matrix")) {
            std::optional<double> bond;
            if (j.contains("bond_length_angstrom") && j["bond_length_angstrom"].is_number())
                bond = j["bond_length_angstrom"].get<double>();
            return {parse_operator(j["matrix"]), bond};
        }
        return {parse_operator(j), std::nullopt};
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed matrix JSON: ") + e.what());
    }
}

LoadedMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_json(buffer.str());
}

} // namespace qeigen::io
