//! Relations as they appear in print, one `lhs = rhs` per line.

/// The modified RE algebra, standard R.
pub const QCASE_MREA: [&str; 6] = [
    "q*a*b - q^-1*b*a = h*b",
    "q*c*a - q^-1*a*c = h*c",
    "a*d - d*a = 0",
    "q*(b*c - c*b) = ((q - q^-1)*a - h)*(d - a)",
    "q*(d*b - b*d) = ((q - q^-1)*a - h)*b",
    "q*(c*d - d*c) = c*((q - q^-1)*a - h)",
];

/// Derivative pairs, identical in both Weyl algebras.
pub const DERIVATIVE_PAIRS: [&str; 6] = [
    "da*db - db*da = -(q^2 - 1)*dd*db",
    "db*dc - dc*db = (q^2 - 1)*(dd - da)*dd",
    "da*dc - dc*da = (q^2 - 1)*dc*dd",
    "q^2*db*dd - dd*db = 0",
    "da*dd - dd*da = 0",
    "dc*dd - q^2*dd*dc = 0",
];

/// Derivative-coordinate rows of `W(N)`.
pub const WEYL_N_ROWS: [&str; 16] = [
    "da*a = q^-1 + q^-2*a*da - (1 - q^-2)*b*db + q^-1*h*da",
    "da*b = b*da - (1 - q^-2)*a*dc + (q - q^-1)^2*b*dd + q^-1*h*dc",
    "da*c = q^-2*c*da + (1 - q^-2)*(a - d)*db",
    "da*d = d*da + (1 - q^-2)*(b*db - c*dc) - (q - q^-1)^2*(a - d)*dd + q*(1 - q^-2)^2 + q*(1 - q^-2)^2*h*da",
    "db*a = q^-2*a*db + q^-1*h*db",
    "db*b = q^-1 + q^-2*b*db - (1 - q^-2)*a*dd + q^-1*h*dd",
    "db*c = c*db",
    "db*d = d*db - (q^2 - 1)*c*dd",
    "dc*a = a*dc - (q^2 - 1)*b*dd",
    "dc*b = b*dc",
    "dc*c = q^-3 + q^-2*c*dc + (1 - q^-2)*(a - d)*dd - (q^-2 - q^-4)*a*da + (1 - q^-2)^2*b*db + q^-3*h*da",
    "dc*d = q^-2*d*dc + (1 - q^-2)*(2 - q^2)*b*dd - (1 - q^-2)*b*da + (1 - q^-2)^2*a*dc + q^-3*h*dc",
    "dd*a = a*dd",
    "dd*b = q^-2*b*dd",
    "dd*c = c*dd - (q^-2 - q^-4)*a*db + q^-3*h*db",
    "dd*d = q^-3 + q^-2*d*dd + (1 - q^-2)^2*a*dd - (q^-2 - q^-4)*b*db + q^-3*h*dd",
];

/// The row whose printed form carries extra terms, and those terms
/// (printed minus generated).
pub const WEYL_N_ODD_ROW: &str = "da*d";
pub const WEYL_N_ODD_EXTRA: &str = "q*(1 - q^-2)^2 + q*(1 - q^-2)^2*h*da";

/// `q → 1`.
pub const GL2H_ROWS: [&str; 16] = [
    "da*a - a*da = 1 + h*da",
    "da*b - b*da = h*dc",
    "da*c - c*da = 0",
    "da*d - d*da = 0",
    "db*a - a*db = h*db",
    "db*b - b*db = 1 + h*dd",
    "db*c - c*db = 0",
    "db*d - d*db = 0",
    "dc*a - a*dc = 0",
    "dc*b - b*dc = 0",
    "dc*c - c*dc = 1 + h*da",
    "dc*d - d*dc = h*dc",
    "dd*a - a*dd = 0",
    "dd*b - b*dd = 0",
    "dd*c - c*dd = h*db",
    "dd*d - d*dd = 1 + h*dd",
];

pub const GL2H_COORDS: [&str; 6] = [
    "a*b - b*a = h*b",
    "a*c - c*a = -h*c",
    "a*d - d*a = 0",
    "b*c - c*b = h*(a - d)",
    "b*d - d*b = h*b",
    "c*d - d*c = -h*c",
];

pub const U2H_COORDS: [&str; 6] = [
    "x*y - y*x = h*z",
    "y*z - z*y = h*x",
    "z*x - x*z = h*y",
    "t*x - x*t = 0",
    "t*y - y*t = 0",
    "t*z - z*t = 0",
];

/// Derivative-coordinate rows in the compact generators with the shifted `dtt`.
pub const U2H_ROWS: [&str; 16] = [
    "dtt*t - t*dtt = (h/2)*dtt",
    "dtt*x - x*dtt = -(h/2)*dx",
    "dtt*y - y*dtt = -(h/2)*dy",
    "dtt*z - z*dtt = -(h/2)*dz",
    "dx*t - t*dx = (h/2)*dx",
    "dx*x - x*dx = (h/2)*dtt",
    "dx*y - y*dx = (h/2)*dz",
    "dx*z - z*dx = -(h/2)*dy",
    "dy*t - t*dy = (h/2)*dy",
    "dy*x - x*dy = -(h/2)*dz",
    "dy*y - y*dy = (h/2)*dtt",
    "dy*z - z*dy = (h/2)*dx",
    "dz*t - t*dz = (h/2)*dz",
    "dz*x - x*dz = (h/2)*dy",
    "dz*y - y*dz = -(h/2)*dx",
    "dz*z - z*dz = (h/2)*dtt",
];

/// Values of the derivatives on the generators of `W(N)`.
pub const WEYL_N_VALUES: [(&str, &str, &str); 4] = [("da", "a", "q^-1"), ("db", "b", "q^-1"), ("dc", "c", "q^-3"), ("dd", "d", "q^-3")];
