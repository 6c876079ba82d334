#include "deepesn/io.hpp"

#include "deepesn/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace deepesn {

std::string format_exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_12g(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out)
{
    token = trim(token);
    if (token.empty()) return false;
    if (token.front() == '+') token.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_fields(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path)
{
    std::ofstream f(path);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) f << ',';
            f << format_exact(m(r, c));
        }
        f << '\n';
    }
    if (!f) throw DataError("write failed: " + path.string());
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f) throw DataError("cannot open " + path.string());
    std::vector<double> data;
    std::size_t cols = 0, rows = 0, line_no = 0;
    std::string line;
    while (std::getline(f, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto fields = split_fields(body);
        std::vector<double> values;
        values.reserve(fields.size());
        bool ok = true;
        for (auto field : fields) {
            double v;
            if (!parse_double(field, v)) {
                ok = false;
                break;
            }
            values.push_back(v);
        }
        if (!ok) {
            if (rows == 0 && data.empty() && line_no == 1) continue; // header
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-numeric field");
        }
        if (rows == 0) cols = values.size();
        if (values.size() != cols)
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " + std::to_string(cols)
                            + " fields, got " + std::to_string(values.size()));
        data.insert(data.end(), values.begin(), values.end());
        ++rows;
    }
    if (rows == 0) throw DataError(path.string() + ": no numeric rows");
    try {
        return DenseMatrix(rows, cols, std::move(data));
    } catch (const InvalidArgument& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

} // namespace deepesn
