public class DeviceInfo {
    String id(TelephonyManager manager) {
        if (manager == null) {
            return "unknown";
        }
        return manager.getDeviceId();
    }
}
