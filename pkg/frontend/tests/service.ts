export const SERVICE_PORT = 8809;
export const SERVICE_BASE = `http://127.0.0.1:${SERVICE_PORT}`;
