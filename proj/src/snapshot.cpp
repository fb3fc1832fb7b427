#include "vp1d/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "vp1d/errors.hpp"

namespace vp1d {

namespace {

constexpr char kMagic[8] = {'V', 'P', '1', 'D', 'S', 'N', 'A', 'P'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void write_snapshot(const SystemState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw config_error("cannot open snapshot for writing: " + path);

    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, state.model == ModelKind::classical ? 0u : 1u);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.grid.n_x));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(state.grid.n_v));
    put<double>(out, state.grid.x_min);
    put<double>(out, state.grid.x_max);
    put<double>(out, state.grid.v_max);
    put<double>(out, state.g.mass);
    put<double>(out, state.t);

    out.write(reinterpret_cast<const char*>(state.f.values.data()),
              static_cast<std::streamsize>(state.f.values.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(state.g.values.data()),
              static_cast<std::streamsize>(state.g.values.size() * sizeof(double)));
    if (!out)
        throw config_error("short write to snapshot: " + path);
}

SystemState read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot open snapshot: " + path);

    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw config_error("not a snapshot file: " + path);
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion)
        throw config_error("unsupported snapshot version in " + path);
    const auto model_id = get<std::uint32_t>(in);
    if (model_id > 1)
        throw config_error("bad model id in snapshot " + path);

    SystemState state;
    state.model = model_id == 0 ? ModelKind::classical : ModelKind::relativistic;
    state.grid.n_x = static_cast<int>(get<std::uint32_t>(in));
    state.grid.n_v = static_cast<int>(get<std::uint32_t>(in));
    state.grid.x_min = get<double>(in);
    state.grid.x_max = get<double>(in);
    state.grid.v_max = get<double>(in);
    const double mass_g = get<double>(in);
    state.t = get<double>(in);
    if (!in)
        throw config_error("truncated snapshot header: " + path);
    if (state.grid.n_x < 1 || state.grid.n_v < 1 ||
        static_cast<long long>(state.grid.n_x) * state.grid.n_v > (1ll << 32))
        throw config_error("implausible grid size in snapshot: " + path);
    state.grid.validate();
    if (!(mass_g > 0.0))
        throw config_error("bad mass_g in snapshot: " + path);

    state.f.mass = 1.0;
    state.f.charge_sign = +1;
    state.g.mass = mass_g;
    state.g.charge_sign = -1;
    state.f.values.resize(state.grid.cells());
    state.g.values.resize(state.grid.cells());
    in.read(reinterpret_cast<char*>(state.f.values.data()),
            static_cast<std::streamsize>(state.f.values.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(state.g.values.data()),
            static_cast<std::streamsize>(state.g.values.size() * sizeof(double)));
    if (!in)
        throw config_error("truncated snapshot payload: " + path);
    return state;
}

} // namespace vp1d
