#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace wct {

// On-disk layout: "WCT1" magic, uint64 little-endian header byte count,
// UTF-8 JSON header, then the payload as little-endian f64, row-major in
// the index order documented per kind.
struct Container {
    std::string kind;  // beam | cone | radon | gtable | image
    int n = 0;
    int k = 0;
    std::vector<std::uint64_t> dims;
    nlohmann::json meta;
    std::vector<double> payload;

    std::uint64_t payload_count() const {
        std::uint64_t c = 1;
        for (auto d : dims) c *= d;
        return c;
    }
};

// Incremental writer so multi-gigabyte sinograms never need to be resident.
class ContainerWriter {
public:
    ContainerWriter(const std::string& path, const std::string& kind, int n, int k,
                    const std::vector<std::uint64_t>& dims, const nlohmann::json& meta);
    void append(std::span<const double> chunk);
    // Verifies the byte count against dims and flushes.
    void close();
    ~ContainerWriter();

private:
    std::ofstream out_;
    std::string path_;
    std::uint64_t expected_, written_ = 0;
    bool closed_ = false;
};

class ContainerReader {
public:
    explicit ContainerReader(const std::string& path);
    const std::string& kind() const { return kind_; }
    int n() const { return n_; }
    int k() const { return k_; }
    const std::vector<std::uint64_t>& dims() const { return dims_; }
    const nlohmann::json& meta() const { return meta_; }
    std::uint64_t remaining() const { return remaining_; }
    // Reads exactly chunk.size() values; throws on truncation.
    void read(std::span<double> chunk);

private:
    std::ifstream in_;
    std::string kind_;
    int n_ = 0, k_ = 0;
    std::vector<std::uint64_t> dims_;
    nlohmann::json meta_;
    std::uint64_t remaining_ = 0;
};

void write_container(const std::string& path, const Container& c);
Container read_container(const std::string& path);

}  // namespace wct
