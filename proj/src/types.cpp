#include "unictrl/types.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace unictrl {

InputMatrix::InputMatrix(int n, std::vector<SignedVersor> columns)
    : n_(n), columns_(std::move(columns)) {
    if (n_ <= 0) throw InputError("input matrix dimension must be positive");
    for (const auto& c : columns_) {
        if (c.node < 1 || c.node > n_)
            throw InputError("input column node index out of range: " + std::to_string(c.node));
        if (c.sign != 1 && c.sign != -1)
            throw InputError("input column sign must be +1 or -1");
    }
}

Matrix InputMatrix::dense() const {
    Matrix B = Matrix::Zero(n_, cols());
    for (int j = 0; j < cols(); ++j)
        B(columns_[j].node - 1, j) = columns_[j].sign;
    return B;
}

InputMatrix InputMatrix::appended(SignedVersor beta) const {
    auto cols = columns_;
    cols.push_back(beta);
    return InputMatrix(n_, std::move(cols));
}

NodeSubset::NodeSubset(std::vector<int> indices, int n) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    for (int i : indices_)
        if (i < 1 || i > n)
            throw InputError("node index out of range: " + std::to_string(i));
}

bool NodeSubset::contains(int node) const {
    return std::binary_search(indices_.begin(), indices_.end(), node);
}

void NodeSubset::insert(int node) {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), node);
    if (it == indices_.end() || *it != node) indices_.insert(it, node);
}

std::vector<SignedVersor> parse_versor_list(const std::string& text) {
    std::vector<SignedVersor> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::string t;
        for (char ch : token)
            if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
        if (t.empty()) continue;
        int sign = +1;
        size_t pos = 0;
        if (t[pos] == '+') {
            ++pos;
        } else if (t[pos] == '-') {
            sign = -1;
            ++pos;
        }
        if (pos >= t.size() || (t[pos] != 'e' && t[pos] != 'E'))
            throw InputError("bad versor token '" + token + "' (expected e.g. -e6)");
        ++pos;
        if (pos >= t.size()) throw InputError("bad versor token '" + token + "'");
        int node = 0;
        for (; pos < t.size(); ++pos) {
            if (!std::isdigit(static_cast<unsigned char>(t[pos])))
                throw InputError("bad versor token '" + token + "'");
            node = node * 10 + (t[pos] - '0');
        }
        if (node < 1) throw InputError("versor node index must be >= 1 in '" + token + "'");
        out.push_back({node, sign});
    }
    return out;
}

std::string format_versor(const SignedVersor& v) {
    return (v.sign < 0 ? std::string("-e") : std::string("e")) + std::to_string(v.node);
}

}  // namespace unictrl
