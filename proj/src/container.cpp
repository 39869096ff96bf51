#include "wct/container.hpp"

#include <bit>
#include <stdexcept>

namespace wct {

static_assert(std::endian::native == std::endian::little,
              "container payload I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'W', 'C', 'T', '1'};

std::string make_header(const std::string& kind, int n, int k,
                        const std::vector<std::uint64_t>& dims, const nlohmann::json& meta) {
    nlohmann::json h;
    h["kind"] = kind;
    h["n"] = n;
    h["k"] = k;
    h["dims"] = dims;
    h["meta"] = meta;
    return h.dump();
}

}  // namespace

ContainerWriter::ContainerWriter(const std::string& path, const std::string& kind, int n, int k,
                                 const std::vector<std::uint64_t>& dims,
                                 const nlohmann::json& meta)
    : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    expected_ = 1;
    for (auto d : dims) expected_ *= d;
    std::string header = make_header(kind, n, k, dims, meta);
    std::uint64_t len = header.size();
    out_.write(kMagic, 4);
    out_.write(reinterpret_cast<const char*>(&len), 8);
    out_.write(header.data(), static_cast<std::streamsize>(header.size()));
}

void ContainerWriter::append(std::span<const double> chunk) {
    out_.write(reinterpret_cast<const char*>(chunk.data()),
               static_cast<std::streamsize>(chunk.size() * sizeof(double)));
    written_ += chunk.size();
}

void ContainerWriter::close() {
    if (closed_) return;
    closed_ = true;
    if (written_ != expected_)
        throw std::runtime_error("payload size mismatch writing " + path_);
    out_.flush();
    if (!out_) throw std::runtime_error("write failed: " + path_);
    out_.close();
}

ContainerWriter::~ContainerWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; close() explicitly to see errors
    }
}

ContainerReader::ContainerReader(const std::string& path) : in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot open: " + path);
    char magic[4];
    in_.read(magic, 4);
    if (!in_ || std::string(magic, 4) != std::string(kMagic, 4))
        throw std::runtime_error("bad magic in " + path);
    std::uint64_t len = 0;
    in_.read(reinterpret_cast<char*>(&len), 8);
    std::string header(len, '\0');
    in_.read(header.data(), static_cast<std::streamsize>(len));
    if (!in_) throw std::runtime_error("truncated header in " + path);
    nlohmann::json h = nlohmann::json::parse(header);
    kind_ = h.at("kind").get<std::string>();
    n_ = h.at("n").get<int>();
    k_ = h.at("k").get<int>();
    dims_ = h.at("dims").get<std::vector<std::uint64_t>>();
    meta_ = h.at("meta");
    remaining_ = 1;
    for (auto d : dims_) remaining_ *= d;
}

void ContainerReader::read(std::span<double> chunk) {
    if (chunk.size() > remaining_) throw std::runtime_error("read past payload end");
    in_.read(reinterpret_cast<char*>(chunk.data()),
             static_cast<std::streamsize>(chunk.size() * sizeof(double)));
    if (!in_) throw std::runtime_error("truncated payload");
    remaining_ -= chunk.size();
}

void write_container(const std::string& path, const Container& c) {
    ContainerWriter w(path, c.kind, c.n, c.k, c.dims, c.meta);
    w.append(c.payload);
    w.close();
}

Container read_container(const std::string& path) {
    ContainerReader r(path);
    Container c;
    c.kind = r.kind();
    c.n = r.n();
    c.k = r.k();
    c.dims = r.dims();
    c.meta = r.meta();
    c.payload.resize(r.remaining());
    r.read(c.payload);
    return c;
}

}  // namespace wct
